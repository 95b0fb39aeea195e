#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mcensus/box.hpp"
#include "mcensus/matkey.hpp"

namespace mcensus {

enum class Variant { All, Nonsingular };

std::string variant_name(Variant v);

struct CensusMeta {
  BoxSpec spec;
  int m = 1;
  Variant variant = Variant::All;
  int width = 1;
};

// Tuple guard for the exhaustive paths; MCEN_GUARD_MAX_TUPLES overrides the
// 2^40 default (expert use).
std::uint64_t max_tuple_guard();

// A matrix is in the census domain if the box filter admits it and, for the
// nonsingular variant, its determinant is nonzero.
bool census_admits(const BoxSpec& spec, Variant v, const Mat& m);

// Exact count of census-domain matrices in the box.
std::uint64_t filtered_cardinality(const BoxSpec& spec, Variant v, int workers = 0);

// Multiplicity map key(C) -> r_m(C). Internally sharded by the low 8 bits of
// key_mix; shards merge by addition, so parallel builds are deterministic.
class CountMap {
public:
  explicit CountMap(CensusMeta meta) : meta_(std::move(meta)) {}

  const CensusMeta& meta() const { return meta_; }

  void add(const MatKey& key, std::uint64_t mult);
  std::uint64_t multiplicity(const MatKey& key) const;  // 0 if absent
  std::uint64_t multiplicity_of(const Mat& c) const;    // encodes with meta width

  std::uint64_t distinct() const;
  uint128 total_multiplicity() const;

  void merge_from(CountMap&& other);

  template <class Fn>
  void for_each(Fn&& fn) const {  // unspecified order
    for (const auto& shard : shards_)
      for (const auto& [k, v] : shard) fn(k, v);
  }

  template <class Fn>
  void for_each_shard(int s, Fn&& fn) const {
    for (const auto& [k, v] : shards_[static_cast<std::size_t>(s)]) fn(k, v);
  }

  std::vector<std::pair<MatKey, std::uint64_t>> sorted_entries() const;

  // Binary layout: magic "MCEN1"; u8 n, u8 width, u8 variant, u8 filter;
  // i32 filter_k, i64 filter_d, u64 H, u32 m, u64 entry_count (all LE);
  // then entries sorted by key bytes ascending, each key_length bytes of key
  // followed by a u64 LE multiplicity.
  std::string serialize() const;
  static CountMap deserialize(std::string_view data);

  static constexpr int kShards = 256;

private:
  friend class CensusBuilder;
  CensusMeta meta_;
  std::array<std::unordered_map<MatKey, std::uint64_t, MatKeyHash>, kShards> shards_;
};

// Exhaustive m-tuple census. Guard: (2H+1)^(n^2 * m) <= max_tuple_guard().
// Asserts sum of multiplicities == (filtered box)^m before returning.
CountMap census_products(const BoxSpec& spec, int m, Variant variant = Variant::All,
                         int workers = 0);

// One more multiplication pass: entries[key(P*A)] += prev[key(P)] over all
// box members A. Equals census_products with m+1.
CountMap iterate_convolve(const CountMap& prev, const BoxSpec& spec, int workers = 0);

// #T_m(box, C). Fast path for m=2 with nonsingular C (iterate A, test
// integrality of A^{-1} C); exhaustive loop otherwise.
std::uint64_t count_solutions(const BoxSpec& spec, int m, const Mat& c, int workers = 0);

// #T_m = sum_C r_m(C)^2, accumulated in 128 bits with overflow checks.
uint128 count_pairs(const BoxSpec& spec, int m, Variant variant = Variant::All, int workers = 0);

// #A_m(H): distinct products a_1...a_m with |a_i| <= H. Equals
// 2 * (positive sub-table) + 1 by sign symmetry plus zero.
std::uint64_t scalar_table(long long H, int m);
std::uint64_t scalar_table_positive(long long H, int m);

struct CensusResult {
  int n = 0;
  long long H = 0;
  int m = 0;
  Variant variant = Variant::All;
  std::uint64_t distinct = 0;
  std::uint64_t total_tuples = 0;
  std::uint64_t max_multiplicity = 0;
  std::string argmax_key_hex;
  std::uint64_t wall_ms = 0;
};

// Ties on max multiplicity resolve to the smallest key bytes, so the summary
// is deterministic.
CensusResult summarize(const CountMap& map, std::uint64_t wall_ms);

}  // namespace mcensus
