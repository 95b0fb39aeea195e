#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "mcensus/mat.hpp"

namespace mcensus {

enum class BoxFilter { All, Nonsingular, RankEq, RankLe, DetEq };

std::string filter_name(BoxFilter f);

// Enumeration domain: all n x n integer matrices with |entry| <= H, plus an
// optional membership filter. Filters never change enumeration order.
struct BoxSpec {
  int n = 2;
  long long H = 1;
  BoxFilter filter = BoxFilter::All;
  int k = 0;         // RankEq / RankLe parameter
  long long d = 0;   // DetEq parameter

  // (2H+1)^(n^2); GuardError if it does not fit in unsigned 64-bit.
  std::uint64_t raw_cardinality() const;

  bool admits(const Mat& m) const;

  friend bool operator==(const BoxSpec& a, const BoxSpec& b) {
    return a.n == b.n && a.H == b.H && a.filter == b.filter && a.k == b.k && a.d == b.d;
  }
};

void validate(const BoxSpec& spec);

// Matrix at a given position of the mixed-radix lexicographic order: entries
// row-major, first entry most significant, each digit running -H..H.
Mat box_unrank(const BoxSpec& spec, std::uint64_t index);

// Streams the sub-range [begin, end) of the box in order, filter applied.
class BoxStream {
public:
  BoxStream(const BoxSpec& spec, std::uint64_t begin, std::uint64_t end);
  explicit BoxStream(const BoxSpec& spec);

  std::optional<Mat> next();

private:
  BoxSpec spec_;
  std::uint64_t at_, end_;
  Mat cur_;
};

// Calls fn for every *raw* (unfiltered) matrix of [begin, end), in order.
// The workhorse under the tally and census loops; callers apply filters.
template <class Fn>
void for_each_raw(const BoxSpec& spec, std::uint64_t begin, std::uint64_t end, Fn&& fn) {
  if (begin >= end) return;
  Mat cur = box_unrank(spec, begin);
  const int cells = spec.n * spec.n;
  for (std::uint64_t i = begin; i < end; ++i) {
    fn(static_cast<const Mat&>(cur));
    // odometer increment on the last (least significant) entry
    for (int c = cells - 1; c >= 0; --c) {
      int128& e = cur.at(c / spec.n, c % spec.n);
      if (e < spec.H) {
        ++e;
        break;
      }
      e = -spec.H;
    }
  }
}

template <class Fn>
void for_each_in_box(const BoxSpec& spec, Fn&& fn) {
  const std::uint64_t total = spec.raw_cardinality();
  for_each_raw(spec, 0, total, [&](const Mat& m) {
    if (spec.admits(m)) fn(m);
  });
}

// Label -> count table; counts use checked increments. CSV rows are sorted
// by label ascending (std::map keeps them that way).
struct DistTable {
  std::map<long long, std::uint64_t> rows;

  void add(long long label, std::uint64_t count = 1);
  void merge(const DistTable& other);
  std::uint64_t at(long long label) const;
  std::uint64_t total() const;
  std::string to_csv() const;  // header "label,count"
};

DistTable count_by_det(const BoxSpec& spec, int workers = 0);
DistTable count_by_rank(const BoxSpec& spec, int workers = 0);

// tau(k) by trial division; requires 1 <= k < 2^63.
std::uint64_t divisor_count(long long k);

}  // namespace mcensus
