#include "mcensus/box.hpp"

#include <sstream>

#include "mcensus/parallel.hpp"

namespace mcensus {

std::string filter_name(BoxFilter f) {
  switch (f) {
    case BoxFilter::All: return "all";
    case BoxFilter::Nonsingular: return "nonsingular";
    case BoxFilter::RankEq: return "rank_eq";
    case BoxFilter::RankLe: return "rank_le";
    case BoxFilter::DetEq: return "det_eq";
  }
  return "?";
}

void validate(const BoxSpec& spec) {
  if (spec.n < 1 || spec.n > Mat::kMaxDim)
    throw DimensionError("box dimension must lie in [1, 6]");
  if (spec.H < 1) throw DomainError("entry bound H must be >= 1");
  if (spec.filter == BoxFilter::RankEq || spec.filter == BoxFilter::RankLe) {
    if (spec.k < 0 || spec.k > spec.n) throw DomainError("rank filter parameter out of [0, n]");
  }
}

std::uint64_t BoxSpec::raw_cardinality() const {
  validate(*this);
  const std::uint64_t side = static_cast<std::uint64_t>(2 * H + 1);
  std::uint64_t card = 1;
  try {
    for (int i = 0; i < n * n; ++i) card = checked_mul_u64(card, side);
  } catch (const OverflowError&) {
    throw GuardError("box too large: (2H+1)^(n^2) does not fit in 64 bits");
  }
  return card;
}

bool BoxSpec::admits(const Mat& m) const {
  switch (filter) {
    case BoxFilter::All: return true;
    case BoxFilter::Nonsingular: return det(m) != 0;
    case BoxFilter::RankEq: return rank_rational(m) == k;
    case BoxFilter::RankLe: return rank_rational(m) <= k;
    case BoxFilter::DetEq: return det(m) == static_cast<int128>(d);
  }
  return false;
}

Mat box_unrank(const BoxSpec& spec, std::uint64_t index) {
  const std::uint64_t side = static_cast<std::uint64_t>(2 * spec.H + 1);
  Mat m(spec.n);
  const int cells = spec.n * spec.n;
  for (int c = cells - 1; c >= 0; --c) {
    std::uint64_t digit = index % side;
    index /= side;
    m.at(c / spec.n, c % spec.n) = static_cast<int128>(digit) - spec.H;
  }
  return m;
}

BoxStream::BoxStream(const BoxSpec& spec, std::uint64_t begin, std::uint64_t end)
    : spec_(spec), at_(begin), end_(end), cur_(spec.n) {
  validate(spec_);
  if (at_ < end_) cur_ = box_unrank(spec_, at_);
}

BoxStream::BoxStream(const BoxSpec& spec) : BoxStream(spec, 0, spec.raw_cardinality()) {}

std::optional<Mat> BoxStream::next() {
  while (at_ < end_) {
    Mat out = cur_;
    ++at_;
    if (at_ < end_) {
      for (int c = spec_.n * spec_.n - 1; c >= 0; --c) {
        int128& e = cur_.at(c / spec_.n, c % spec_.n);
        if (e < spec_.H) {
          ++e;
          break;
        }
        e = -spec_.H;
      }
    }
    if (spec_.admits(out)) return out;
  }
  return std::nullopt;
}

void DistTable::add(long long label, std::uint64_t count) {
  std::uint64_t& slot = rows[label];
  slot = checked_add_u64(slot, count);
}

void DistTable::merge(const DistTable& other) {
  for (const auto& [label, count] : other.rows) add(label, count);
}

std::uint64_t DistTable::at(long long label) const {
  auto it = rows.find(label);
  return it == rows.end() ? 0 : it->second;
}

std::uint64_t DistTable::total() const {
  std::uint64_t t = 0;
  for (const auto& [label, count] : rows) t = checked_add_u64(t, count);
  return t;
}

std::string DistTable::to_csv() const {
  std::ostringstream os;
  os << "label,count\n";
  for (const auto& [label, count] : rows) os << label << "," << count << "\n";
  return os.str();
}

namespace {

constexpr int128 kDetLabelMax = static_cast<int128>(1) << 62;

template <class LabelFn>
DistTable tally(const BoxSpec& spec, int workers, LabelFn&& label_of) {
  const std::uint64_t total = spec.raw_cardinality();
  workers = clamp_workers(workers);
  auto ranges = split_range(total, workers);
  std::vector<DistTable> parts(ranges.size());
  run_workers(static_cast<int>(ranges.size()), [&](int w) {
    auto [b, e] = ranges[static_cast<std::size_t>(w)];
    DistTable& local = parts[static_cast<std::size_t>(w)];
    for_each_raw(spec, b, e, [&](const Mat& m) {
      auto lab = label_of(m);
      if (lab) local.add(*lab);
    });
  });
  DistTable out;
  for (const auto& p : parts) out.merge(p);
  return out;
}

}  // namespace

DistTable count_by_det(const BoxSpec& spec, int workers) {
  return tally(spec, workers, [&](const Mat& m) -> std::optional<long long> {
    const int128 dv = det(m);
    switch (spec.filter) {
      case BoxFilter::All: break;
      case BoxFilter::Nonsingular:
        if (dv == 0) return std::nullopt;
        break;
      case BoxFilter::DetEq:
        if (dv != static_cast<int128>(spec.d)) return std::nullopt;
        break;
      default:
        if (!spec.admits(m)) return std::nullopt;
    }
    if (abs128(dv) > kDetLabelMax) throw OverflowError("determinant label exceeds 63 bits");
    return static_cast<long long>(dv);
  });
}

DistTable count_by_rank(const BoxSpec& spec, int workers) {
  return tally(spec, workers, [&](const Mat& m) -> std::optional<long long> {
    if (spec.filter != BoxFilter::All && !spec.admits(m)) return std::nullopt;
    return rank_rational(m);
  });
}

std::uint64_t divisor_count(long long k) {
  if (k < 1) throw DomainError("divisor_count requires k >= 1");
  std::uint64_t n = static_cast<std::uint64_t>(k);
  std::uint64_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  }
  return count;
}

}  // namespace mcensus
