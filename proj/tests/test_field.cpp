#include <doctest.h>

#include <random>

#include "mcensus/field_mat.hpp"

using namespace mcensus;

namespace {

template <class K>
FieldMat<K> from_rows(int n, std::initializer_list<long> vals,
                      typename FieldTraits<K>::Ctx ctx = {}) {
  FieldMat<K> m(n, n, ctx);
  int i = 0;
  for (long v : vals) {
    m.at(i / n, i % n) = FieldTraits<K>::make(ctx, v);
    ++i;
  }
  return m;
}

// random matrix of a forced rank profile: product of n x r and r x n factors
template <class K>
FieldMat<K> random_rank_biased(std::mt19937_64& rng, int n,
                               typename FieldTraits<K>::Ctx ctx = {}) {
  std::uniform_int_distribution<long> entry(-9, 9);
  const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));  // 0..n
  FieldMat<K> u(n, r == 0 ? 1 : r, ctx), v(r == 0 ? 1 : r, n, ctx);
  if (r == 0) return FieldMat<K>(n, n, ctx);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) u.at(i, j) = FieldTraits<K>::make(ctx, entry(rng));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) v.at(i, j) = FieldTraits<K>::make(ctx, entry(rng));
  return u * v;
}

template <class K>
void check_construction_contract(const FieldMat<K>& a) {
  const auto [b, trace] = left_identity_factor(a);
  const int n = a.n();
  const int k = rank_of(a);
  REQUIRE(b * a == a);
  REQUIRE(rank_of(b) == k);
  // B = B' + I and B'A = 0
  CHECK(trace.b == b);
  CHECK(trace.b_prime + FieldMat<K>::identity(n, a.ctx()) == b);
  CHECK((trace.b_prime * a).is_zero());
  if (k > 0 && k < n) {
    REQUIRE(static_cast<int>(trace.pivots.size()) == n - k);
    for (std::size_t i = 0; i < trace.rref_rows.size(); ++i) {
      // w_i^T A = 0, leading entry 1 at the pivot
      FieldMat<K> w(1, n, a.ctx());
      for (int j = 0; j < n; ++j) w.at(0, j) = trace.rref_rows[i][static_cast<std::size_t>(j)];
      CHECK((w * a).is_zero());
      CHECK(trace.rref_rows[i][static_cast<std::size_t>(trace.pivots[i] - 1)] == a.make(1));
      if (i > 0) CHECK(trace.pivots[i] > trace.pivots[i - 1]);
    }
    for (const auto& v : trace.null_basis) {
      FieldMat<K> vr(1, n, a.ctx());
      for (int j = 0; j < n; ++j) vr.at(0, j) = v[static_cast<std::size_t>(j)];
      CHECK((vr * a).is_zero());
    }
    // pivot columns of B vanish; non-pivot rows are identity rows
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int z : trace.pivots) is_pivot[static_cast<std::size_t>(z - 1)] = true;
    for (int z : trace.pivots)
      for (int i = 0; i < n; ++i) CHECK(b.at(i, z - 1).is_zero());
    for (int j = 0; j < n; ++j) {
      if (is_pivot[static_cast<std::size_t>(j)]) continue;
      for (int c = 0; c < n; ++c)
        CHECK(b.at(j, c) == (c == j ? a.make(1) : a.make(0)));
    }
  }
}

}  // namespace

TEST_CASE("rref over Q") {
  auto [r, p] = rref(FieldMat<Rat>::identity(3));
  CHECK(r == FieldMat<Rat>::identity(3));
  CHECK(p == std::vector<int>{0, 1, 2});

  auto [r2, p2] = rref(from_rows<Rat>(2, {2, 4, 1, 2}));
  CHECK(r2 == from_rows<Rat>(2, {1, 2, 0, 0}));
  CHECK(p2 == std::vector<int>{0});

  // fractions appear and normalize
  auto [r3, p3] = rref(from_rows<Rat>(2, {2, 3, 4, 7}));
  CHECK(r3 == FieldMat<Rat>::identity(2));
}

TEST_CASE("rref is idempotent over F5") {
  const PrimeField f5(5);
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int n = 1 + static_cast<int>(rng() % 4);
    FieldMat<Fp> m(n, n, f5);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m.at(i, j) = Fp{static_cast<std::uint32_t>(rng() % 5), f5.p()};
    const auto first = rref(m);
    const auto second = rref(first.r);
    CHECK(first.r == second.r);
    CHECK(first.pivots == second.pivots);
  }
}

TEST_CASE("left_null_basis shapes") {
  CHECK(left_null_basis(FieldMat<Rat>::identity(3)).empty());
  const auto full = left_null_basis(FieldMat<Rat>(3, 3));
  REQUIRE(full.size() == 3);  // any basis accepted; dimension asserted

  const auto one = left_null_basis(from_rows<Rat>(2, {1, 0, 0, 0}));
  REQUIRE(one.size() == 1);
  // spans {(0,1)}: first coordinate zero, second nonzero
  CHECK(one[0][0].is_zero());
  CHECK(!one[0][1].is_zero());
}

TEST_CASE("left identity factor, worked examples over Q") {
  {
    const auto [b, trace] = left_identity_factor(from_rows<Rat>(2, {1, 0, 0, 0}));
    CHECK(b == from_rows<Rat>(2, {1, 0, 0, 0}));
    CHECK(trace.pivots == std::vector<int>{2});
    CHECK(trace.b_prime == from_rows<Rat>(2, {0, 0, 0, -1}));
  }
  {
    const auto [b, trace] = left_identity_factor(from_rows<Rat>(2, {1, 1, 1, 1}));
    CHECK(b == from_rows<Rat>(2, {0, 1, 0, 1}));
    CHECK(trace.pivots == std::vector<int>{1});
    CHECK(trace.b_prime == from_rows<Rat>(2, {-1, 1, 0, 0}));
    CHECK(rank_of(b) == 1);
  }
}

TEST_CASE("left identity factor edge ranks") {
  // nonsingular: B = I
  const auto [b, trace] = left_identity_factor(from_rows<Rat>(2, {2, 1, 1, 1}));
  CHECK(b == FieldMat<Rat>::identity(2));
  CHECK(trace.null_basis.empty());
  CHECK(trace.pivots.empty());

  const PrimeField f7(7);
  std::mt19937_64 rng(37);
  for (int t = 0; t < 50; ++t) {
    FieldMat<Fp> m(3, 3, f7);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m.at(i, j) = Fp{static_cast<std::uint32_t>(rng() % 7), f7.p()};
    if (rank_of(m) != 3) continue;
    CHECK(left_identity_factor(m).b == FieldMat<Fp>::identity(3, f7));
  }

  // zero: B = O_n
  const auto [bz, tz] = left_identity_factor(FieldMat<Rat>(3, 3));
  CHECK(bz.is_zero());
  CHECK((tz.b_prime * FieldMat<Rat>(3, 3)).is_zero());
}

TEST_CASE("construction contract holds on fuzzed matrices, Q and F_p") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + static_cast<int>(rng() % 5);
    check_construction_contract(random_rank_biased<Rat>(rng, n));
  }
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 101ull}) {
    const PrimeField f(p);
    for (int t = 0; t < 200; ++t) {
      const int n = 1 + static_cast<int>(rng() % 5);
      check_construction_contract(random_rank_biased<Fp>(rng, n, f));
    }
  }
}

TEST_CASE("bounded_rank_decompose") {
  {
    const auto [x, y] = bounded_rank_decompose(from_rows<Rat>(2, {1, 0, 0, 0}), 1, 2);
    CHECK(x * y == from_rows<Rat>(2, {1, 0, 0, 0}));
    CHECK(rank_of(x) <= 1);
    CHECK(rank_of(y) <= 2);
  }
  {
    const auto [x, y] = bounded_rank_decompose(FieldMat<Rat>(3, 3), 0, 0);
    CHECK(x.is_zero());
    CHECK((x * y).is_zero());
  }
  CHECK_THROWS_AS(bounded_rank_decompose(FieldMat<Rat>::identity(2), 1, 2), DomainError);
  CHECK_THROWS_AS(bounded_rank_decompose(FieldMat<Rat>::identity(2), 2, 5), DomainError);

  std::mt19937_64 rng(43);
  const PrimeField f3(3);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto c = random_rank_biased<Fp>(rng, n, f3);
    const int r = rank_of(c);
    const int k1 = r + static_cast<int>(rng() % static_cast<unsigned>(n - r + 1));
    const int k2 = r + static_cast<int>(rng() % static_cast<unsigned>(n - r + 1));
    const auto [x, y] = bounded_rank_decompose(c, k1, k2);
    CHECK(x * y == c);
    CHECK(rank_of(x) <= k1);
    CHECK(rank_of(y) <= k2);
    CHECK(rank_of(x * y) <= std::min(rank_of(x), rank_of(y)));
  }
}

TEST_CASE("rationals stay canonical through elimination") {
  const Rat r = Rat(6L) / Rat(4L);
  CHECK(r.num() == 3);
  CHECK(r.den() == 2);
  CHECK(r.str() == "3/2");
  CHECK(Rat::parse("3/2") == r);
  CHECK(Rat::parse("-6/4") == -r);
  CHECK(Rat::parse("-6/4").str() == "-3/2");
  CHECK(Rat::parse("10/2").str() == "5");
  CHECK_THROWS_AS(Rat::parse("1/0"), DomainError);
  CHECK_THROWS_AS(Rat(mpz_class(1), mpz_class(0)), DomainError);
  CHECK(Rat(mpz_class(-4), mpz_class(-6)) == Rat(mpz_class(2), mpz_class(3)));
}

TEST_CASE("rref on rectangular matrices") {
  // 2x3 over Q with one dependent row
  FieldMat<Rat> m(2, 3);
  m.at(0, 0) = Rat(1); m.at(0, 1) = Rat(2); m.at(0, 2) = Rat(3);
  m.at(1, 0) = Rat(2); m.at(1, 1) = Rat(4); m.at(1, 2) = Rat(6);
  const auto [r, pivots] = rref(m);
  CHECK(pivots == std::vector<int>{0});
  CHECK(r.at(0, 0) == Rat(1));
  CHECK(r.at(0, 2) == Rat(3));
  CHECK(r.at(1, 0).is_zero());
  CHECK(r.at(1, 2).is_zero());

  // 3x2, full column rank
  FieldMat<Rat> t(3, 2);
  t.at(0, 0) = Rat(1); t.at(1, 1) = Rat(2); t.at(2, 0) = Rat(5); t.at(2, 1) = Rat(1);
  const auto [r2, p2] = rref(t);
  CHECK(p2 == (std::vector<int>{0, 1}));
  for (int j = 0; j < 2; ++j) CHECK(r2.at(2, j).is_zero());
}
