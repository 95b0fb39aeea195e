#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "mcensus/errors.hpp"

namespace mcensus {

// Exact number of n x n matrices over F_q of each rank r, via the product
// formula: (prod_{i<r} (q^n - q^i))^2 / prod_{i<r} (q^r - q^i).
struct RankProfile {
  std::uint32_t q = 2;
  int n = 1;
  std::vector<mpz_class> counts;  // counts[r], r = 0..n

  mpz_class rank_le(int k) const;  // #M_n(F_q; k), prefix sum
  mpz_class total() const;         // q^(n^2)
};

RankProfile fisher_rank_counts(std::uint64_t q, int n);

struct ProductSetCheck {
  std::uint64_t cardinality = 0;  // #{A_1...A_m : rank A_i <= k_i}
  std::uint64_t expected = 0;     // #M_n(F_q; min k_i)
  bool pass = false;              // set equality, not just cardinality
};

// Enumerates the m-fold product set of the rank-capped sets exactly and
// compares it with {C : rank C <= min(caps)} as sets. Guard: q^(n^2) <= 2^20;
// 2 to 4 factors.
ProductSetCheck verify_product_set_field(std::uint64_t q, int n, const std::vector<int>& caps,
                                         int workers = 0);

}  // namespace mcensus
