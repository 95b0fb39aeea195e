#include <doctest.h>

#include "mcensus/prime_field.hpp"
#include "mcensus/rank_counts.hpp"

using namespace mcensus;

namespace {

// exhaustive rank tally over all q^(n^2) matrices, independent elimination
std::vector<std::uint64_t> exhaustive_rank_counts(std::uint32_t q, int n) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(n + 1), 0);
  const PrimeField f(q);
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) total *= q;
  std::vector<std::uint32_t> e(static_cast<std::size_t>(n * n), 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t rem = code;
    for (int i = n * n - 1; i >= 0; --i) {
      e[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(rem % q);
      rem /= q;
    }
    auto work = e;
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (work[static_cast<std::size_t>(i * n + c)] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      for (int j = 0; j < n; ++j)
        std::swap(work[static_cast<std::size_t>(r * n + j)],
                  work[static_cast<std::size_t>(piv * n + j)]);
      const std::uint32_t inv = f.inv(work[static_cast<std::size_t>(r * n + c)]);
      for (int i = r + 1; i < n; ++i) {
        const std::uint32_t factor = f.mul(work[static_cast<std::size_t>(i * n + c)], inv);
        for (int j = c; j < n; ++j) {
          auto& x = work[static_cast<std::size_t>(i * n + j)];
          x = f.sub(x, f.mul(factor, work[static_cast<std::size_t>(r * n + j)]));
        }
      }
      ++r;
    }
    ++counts[static_cast<std::size_t>(r)];
  }
  return counts;
}

}  // namespace

TEST_CASE("fisher counts match exhaustive enumeration") {
  for (auto [q, n] : {std::pair{2u, 2}, {3u, 2}, {2u, 3}, {5u, 2}}) {
    const RankProfile prof = fisher_rank_counts(q, n);
    const auto brute = exhaustive_rank_counts(q, n);
    REQUIRE(prof.counts.size() == brute.size());
    for (int r = 0; r <= n; ++r)
      CHECK(prof.counts[static_cast<std::size_t>(r)] == mpz_class(brute[static_cast<std::size_t>(r)]));
  }
}

TEST_CASE("fisher frozen values") {
  const RankProfile f22 = fisher_rank_counts(2, 2);
  CHECK(f22.counts[0] == 1);
  CHECK(f22.counts[1] == 9);
  CHECK(f22.counts[2] == 6);
  CHECK(f22.rank_le(1) == 10);
  CHECK(f22.total() == 16);

  const RankProfile f32 = fisher_rank_counts(3, 2);
  CHECK(f32.counts[1] == 32);
  CHECK(f32.rank_le(1) == 33);

  const RankProfile f23 = fisher_rank_counts(2, 3);
  CHECK(f23.counts[0] == 1);
  CHECK(f23.counts[1] == 49);
  CHECK(f23.counts[2] == 294);
  CHECK(f23.counts[3] == 168);

  // rank n count is the general linear group order
  mpz_class gl2q3 = (mpz_class(9) - 1) * (mpz_class(9) - 3);
  CHECK(fisher_rank_counts(3, 2).counts[2] == gl2q3);

  CHECK(fisher_rank_counts(7, 4).counts[0] == 1);
  CHECK_THROWS_AS(fisher_rank_counts(4, 2), DomainError);
  CHECK_THROWS_AS(fisher_rank_counts(2, 9), DomainError);
}

TEST_CASE("product sets of rank-capped matrices, pairwise") {
  // S_n(F; k1, k2) = M_n(F; min(k1,k2)), verified as sets
  for (auto [q, n] : {std::pair{2ull, 2}, {3ull, 2}, {2ull, 3}}) {
    const RankProfile prof = fisher_rank_counts(q, n);
    for (int k1 = 0; k1 <= n; ++k1)
      for (int k2 = 0; k2 <= n; ++k2) {
        const ProductSetCheck check = verify_product_set_field(q, n, {k1, k2});
        CHECK(check.pass);
        CHECK(mpz_class(check.cardinality) == prof.rank_le(std::min(k1, k2)));
        CHECK(check.cardinality == check.expected);
      }
  }
}

TEST_CASE("frozen product-set cardinalities") {
  CHECK(verify_product_set_field(2, 2, {1, 1}).cardinality == 10);
  CHECK(verify_product_set_field(3, 2, {1, 1}).cardinality == 33);
  CHECK(verify_product_set_field(2, 2, {0, 2}).cardinality == 1);
  CHECK(verify_product_set_field(2, 2, {2, 2}).cardinality == 16);
}

TEST_CASE("m-fold product sets collapse to the smallest cap") {
  const RankProfile prof = fisher_rank_counts(2, 2);
  for (int k1 = 0; k1 <= 2; ++k1)
    for (int k2 = 0; k2 <= 2; ++k2)
      for (int k3 = 0; k3 <= 2; ++k3) {
        const ProductSetCheck check = verify_product_set_field(2, 2, {k1, k2, k3});
        CHECK(check.pass);
        CHECK(mpz_class(check.cardinality) == prof.rank_le(std::min({k1, k2, k3})));
      }
  // four factors still collapse
  CHECK(verify_product_set_field(2, 2, {1, 2, 1, 2}).pass);
  CHECK(verify_product_set_field(2, 2, {1, 2, 1, 2}).cardinality == 10);
}

TEST_CASE("verify guards") {
  CHECK_THROWS_AS(verify_product_set_field(2, 2, {1}), DomainError);
  CHECK_THROWS_AS(verify_product_set_field(2, 2, {1, 3}), DomainError);
  CHECK_THROWS_AS(verify_product_set_field(31, 3, {1, 1}), GuardError);  // 31^9 > 2^20
  CHECK_THROWS_AS(verify_product_set_field(6, 2, {1, 1}), DomainError);  // not prime
}

TEST_CASE("verify runs are worker-count independent") {
  const auto a = verify_product_set_field(3, 2, {1, 2}, 1);
  const auto b = verify_product_set_field(3, 2, {1, 2}, 8);
  CHECK(a.cardinality == b.cardinality);
  CHECK(a.pass == b.pass);
}
