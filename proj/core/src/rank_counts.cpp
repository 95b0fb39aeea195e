#include "mcensus/rank_counts.hpp"

#include <algorithm>
#include <array>

#include "mcensus/parallel.hpp"
#include "mcensus/prime_field.hpp"

namespace mcensus {

mpz_class RankProfile::rank_le(int k) const {
  if (k < 0 || k > n) throw DomainError("rank bound out of [0, n]");
  mpz_class s = 0;
  for (int r = 0; r <= k; ++r) s += counts[static_cast<std::size_t>(r)];
  return s;
}

mpz_class RankProfile::total() const {
  mpz_class t;
  mpz_ui_pow_ui(t.get_mpz_t(), q, static_cast<unsigned long>(n) * static_cast<unsigned long>(n));
  return t;
}

RankProfile fisher_rank_counts(std::uint64_t q, int n) {
  PrimeField field(q);  // validates primality and range
  if (n < 1 || n > 8) throw DomainError("fisher_rank_counts supports n in [1, 8]");
  RankProfile out;
  out.q = field.p();
  out.n = n;
  mpz_class qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), out.q, static_cast<unsigned long>(n));
  for (int r = 0; r <= n; ++r) {
    mpz_class num = 1, den = 1, qi = 1, qr;
    mpz_ui_pow_ui(qr.get_mpz_t(), out.q, static_cast<unsigned long>(r));
    for (int i = 0; i < r; ++i) {
      num *= (qn - qi);
      den *= (qr - qi);
      qi *= out.q;
    }
    mpz_class count;
    mpz_divexact(count.get_mpz_t(), mpz_class(num * num).get_mpz_t(), den.get_mpz_t());
    out.counts.push_back(count);
  }
  if (out.rank_le(n) != out.total())
    throw InternalError("rank counts do not sum to q^(n^2)");
  return out;
}

namespace {

// Matrices over F_q packed as base-q codes, entries row-major, first entry
// most significant. Small enough under the guard to precompute everything.
struct CodedField {
  std::uint32_t q;
  int n;
  std::uint32_t total;                  // q^(n^2)
  std::vector<std::uint32_t> entries;   // decoded, n^2 per code
  std::vector<std::uint8_t> rank;       // per code

  const std::uint32_t* mat(std::uint32_t code) const {
    return entries.data() + static_cast<std::size_t>(code) * static_cast<std::size_t>(n * n);
  }
};

int rank_mod_q_small(std::array<std::uint32_t, 36>& m, int n, const PrimeField& f) {
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int piv = -1;
    for (int i = r; i < n; ++i)
      if (m[static_cast<std::size_t>(i * n + c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (int j = 0; j < n; ++j)
        std::swap(m[static_cast<std::size_t>(r * n + j)], m[static_cast<std::size_t>(piv * n + j)]);
    const std::uint32_t inv = f.inv(m[static_cast<std::size_t>(r * n + c)]);
    for (int i = r + 1; i < n; ++i) {
      const std::uint32_t lead = m[static_cast<std::size_t>(i * n + c)];
      if (lead == 0) continue;
      const std::uint32_t factor = f.mul(lead, inv);
      for (int j = c; j < n; ++j) {
        auto& x = m[static_cast<std::size_t>(i * n + j)];
        x = f.sub(x, f.mul(factor, m[static_cast<std::size_t>(r * n + j)]));
      }
    }
    ++r;
  }
  return r;
}

CodedField build_coded_field(std::uint64_t q, int n) {
  PrimeField field(q);
  if (n < 1 || n > 3) throw DomainError("verify_product_set_field supports n in [1, 3]");
  const int cells = n * n;
  std::uint64_t total = 1;
  for (int i = 0; i < cells; ++i) {
    total *= field.p();
    if (total > (std::uint64_t{1} << 20))
      throw GuardError("field too large: q^(n^2) > 2^20");
  }
  CodedField cf;
  cf.q = field.p();
  cf.n = n;
  cf.total = static_cast<std::uint32_t>(total);
  cf.entries.resize(static_cast<std::size_t>(total) * static_cast<std::size_t>(cells));
  cf.rank.resize(total);
  for (std::uint32_t code = 0; code < cf.total; ++code) {
    std::uint32_t rem = code;
    std::uint32_t* e = cf.entries.data() + static_cast<std::size_t>(code) * cells;
    for (int c = cells - 1; c >= 0; --c) {
      e[c] = rem % cf.q;
      rem /= cf.q;
    }
    std::array<std::uint32_t, 36> work{};
    for (int c = 0; c < cells; ++c) work[static_cast<std::size_t>(c)] = e[c];
    cf.rank[code] = static_cast<std::uint8_t>(rank_mod_q_small(work, n, field));
  }
  return cf;
}

std::uint32_t mul_codes(const CodedField& cf, std::uint32_t a, std::uint32_t b) {
  const int n = cf.n;
  const std::uint32_t* A = cf.mat(a);
  const std::uint32_t* B = cf.mat(b);
  std::uint32_t code = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::uint64_t acc = 0;
      for (int k = 0; k < n; ++k)
        acc += static_cast<std::uint64_t>(A[i * n + k]) * B[k * n + j];
      code = code * cf.q + static_cast<std::uint32_t>(acc % cf.q);
    }
  return code;
}

}  // namespace

ProductSetCheck verify_product_set_field(std::uint64_t q, int n, const std::vector<int>& caps,
                                         int workers) {
  if (caps.size() < 2 || caps.size() > 4)
    throw DomainError("verify_product_set_field takes 2 to 4 rank caps");
  for (int k : caps)
    if (k < 0 || k > n) throw DomainError("rank cap out of [0, n]");

  const CodedField cf = build_coded_field(q, n);
  workers = clamp_workers(workers);

  auto members_of = [&](int cap) {
    std::vector<std::uint32_t> codes;
    for (std::uint32_t c = 0; c < cf.total; ++c)
      if (cf.rank[c] <= cap) codes.push_back(c);
    return codes;
  };

  // fold the product set left to right, one bitmap per stage
  std::vector<std::uint32_t> current = members_of(caps[0]);
  for (std::size_t stage = 1; stage < caps.size(); ++stage) {
    const std::vector<std::uint32_t> rhs = members_of(caps[stage]);
    auto ranges = split_range(current.size(), workers);
    std::vector<std::vector<bool>> seen(ranges.size());
    run_workers(static_cast<int>(ranges.size()), [&](int w) {
      auto [b, e] = ranges[static_cast<std::size_t>(w)];
      std::vector<bool>& local = seen[static_cast<std::size_t>(w)];
      local.assign(cf.total, false);
      for (std::uint64_t i = b; i < e; ++i)
        for (std::uint32_t r : rhs) local[mul_codes(cf, current[i], r)] = true;
    });
    std::vector<std::uint32_t> next;
    for (std::uint32_t c = 0; c < cf.total; ++c) {
      for (const auto& local : seen) {
        if (!local.empty() && local[c]) {
          next.push_back(c);
          break;
        }
      }
    }
    current = std::move(next);
  }

  const int min_cap = *std::min_element(caps.begin(), caps.end());
  ProductSetCheck out;
  out.cardinality = current.size();
  std::vector<std::uint32_t> expected_set = members_of(min_cap);
  out.expected = expected_set.size();
  out.pass = (current == expected_set);  // both sorted ascending by construction
  return out;
}

}  // namespace mcensus
