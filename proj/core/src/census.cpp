#include "mcensus/census.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <unordered_set>

#include "mcensus/parallel.hpp"

namespace mcensus {

std::string variant_name(Variant v) { return v == Variant::All ? "all" : "nonsingular"; }

std::uint64_t max_tuple_guard() {
  static const std::uint64_t value = [] {
    const char* env = std::getenv("MCEN_GUARD_MAX_TUPLES");
    if (env && *env) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 40;
  }();
  return value;
}

bool census_admits(const BoxSpec& spec, Variant v, const Mat& m) {
  if (!spec.admits(m)) return false;
  if (v == Variant::Nonsingular && det(m) == 0) return false;
  return true;
}

std::uint64_t filtered_cardinality(const BoxSpec& spec, Variant v, int workers) {
  if (spec.filter == BoxFilter::All && v == Variant::All) return spec.raw_cardinality();
  const std::uint64_t total = spec.raw_cardinality();
  workers = clamp_workers(workers);
  auto ranges = split_range(total, workers);
  std::vector<std::uint64_t> parts(ranges.size(), 0);
  run_workers(static_cast<int>(ranges.size()), [&](int w) {
    auto [b, e] = ranges[static_cast<std::size_t>(w)];
    std::uint64_t c = 0;
    for_each_raw(spec, b, e, [&](const Mat& m) {
      if (census_admits(spec, v, m)) ++c;
    });
    parts[static_cast<std::size_t>(w)] = c;
  });
  std::uint64_t out = 0;
  for (std::uint64_t c : parts) out = checked_add_u64(out, c);
  return out;
}

void CountMap::add(const MatKey& key, std::uint64_t mult) {
  auto& shard = shards_[key_mix(key) & 0xFF];
  std::uint64_t& slot = shard[key];
  slot = checked_add_u64(slot, mult);
}

std::uint64_t CountMap::multiplicity(const MatKey& key) const {
  const auto& shard = shards_[key_mix(key) & 0xFF];
  auto it = shard.find(key);
  return it == shard.end() ? 0 : it->second;
}

std::uint64_t CountMap::multiplicity_of(const Mat& c) const {
  MatKey k;
  try {
    k = encode_key(c, meta_.width);
  } catch (const KeyWidthError&) {
    return 0;  // cannot be a product value in this census
  }
  return multiplicity(k);
}

std::uint64_t CountMap::distinct() const {
  std::uint64_t d = 0;
  for (const auto& shard : shards_) d += shard.size();
  return d;
}

uint128 CountMap::total_multiplicity() const {
  uint128 t = 0;
  for (const auto& shard : shards_)
    for (const auto& [k, v] : shard) t = checked_add_u128(t, v);
  return t;
}

void CountMap::merge_from(CountMap&& other) {
  for (int s = 0; s < kShards; ++s) {
    auto& dst = shards_[static_cast<std::size_t>(s)];
    auto& src = other.shards_[static_cast<std::size_t>(s)];
    if (dst.empty()) {
      dst = std::move(src);
      continue;
    }
    for (auto& [k, v] : src) {
      std::uint64_t& slot = dst[k];
      slot = checked_add_u64(slot, v);
    }
    src.clear();
  }
}

std::vector<std::pair<MatKey, std::uint64_t>> CountMap::sorted_entries() const {
  std::vector<std::pair<MatKey, std::uint64_t>> out;
  out.reserve(distinct());
  for_each([&](const MatKey& k, std::uint64_t v) { out.emplace_back(k, v); });
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first.bytes < b.first.bytes; });
  return out;
}

namespace {

constexpr char kMagic[5] = {'M', 'C', 'E', 'N', '1'};

template <class T>
void put_le(std::string& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i)
    out.push_back(static_cast<char>(static_cast<std::uint64_t>(v) >> (8 * i) & 0xFF));
}

template <class T>
T get_le(std::string_view data, std::size_t& pos) {
  if (pos + sizeof(T) > data.size()) throw DomainError("truncated census file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(data[pos + i])) << (8 * i);
  pos += sizeof(T);
  return static_cast<T>(v);
}

}  // namespace

std::string CountMap::serialize() const {
  auto entries = sorted_entries();
  std::string out;
  out.reserve(32 + entries.size() * (key_length(meta_.spec.n, meta_.width) + 8));
  out.append(kMagic, sizeof(kMagic));
  out.push_back(static_cast<char>(meta_.spec.n));
  out.push_back(static_cast<char>(meta_.width));
  out.push_back(static_cast<char>(meta_.variant == Variant::All ? 0 : 1));
  out.push_back(static_cast<char>(meta_.spec.filter));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(meta_.spec.k));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(meta_.spec.d));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(meta_.spec.H));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(meta_.m));
  put_le<std::uint64_t>(out, entries.size());
  for (const auto& [k, v] : entries) {
    out.append(k.bytes);
    put_le<std::uint64_t>(out, v);
  }
  return out;
}

CountMap CountMap::deserialize(std::string_view data) {
  if (data.size() < sizeof(kMagic) || std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
    throw DomainError("not a census file (bad magic)");
  std::size_t pos = sizeof(kMagic);
  CensusMeta meta;
  meta.spec.n = get_le<std::uint8_t>(data, pos);
  meta.width = get_le<std::uint8_t>(data, pos);
  meta.variant = get_le<std::uint8_t>(data, pos) == 0 ? Variant::All : Variant::Nonsingular;
  meta.spec.filter = static_cast<BoxFilter>(get_le<std::uint8_t>(data, pos));
  meta.spec.k = static_cast<int>(get_le<std::uint32_t>(data, pos));
  meta.spec.d = static_cast<long long>(get_le<std::uint64_t>(data, pos));
  meta.spec.H = static_cast<long long>(get_le<std::uint64_t>(data, pos));
  meta.m = static_cast<int>(get_le<std::uint32_t>(data, pos));
  const std::uint64_t count = get_le<std::uint64_t>(data, pos);
  CountMap map(meta);
  const std::size_t klen = key_length(meta.spec.n, meta.width);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (pos + klen > data.size()) throw DomainError("truncated census file");
    MatKey k;
    k.bytes.assign(data.substr(pos, klen));
    pos += klen;
    const std::uint64_t mult = get_le<std::uint64_t>(data, pos);
    map.add(k, mult);
  }
  if (pos != data.size()) throw DomainError("trailing bytes in census file");
  return map;
}

namespace {

int128 product_entry_bound(int n, int m, long long H) {
  // |entry| of an m-fold product is at most n^(m-1) H^m
  int128 b = 1;
  for (int i = 0; i < m - 1; ++i) b = checked_mul(b, n);
  for (int i = 0; i < m; ++i) b = checked_mul(b, static_cast<int128>(H));
  return b;
}

uint128 checked_pow_u128(std::uint64_t base, int exp) {
  uint128 r = 1;
  for (int i = 0; i < exp; ++i) r = checked_mul_u128(r, base);
  return r;
}

void check_tuple_guard(const BoxSpec& spec, int m) {
  const std::uint64_t raw = spec.raw_cardinality();
  const std::uint64_t guard = max_tuple_guard();
  uint128 tuples = 1;
  for (int i = 0; i < m; ++i) {
    tuples = checked_mul_u128(tuples, raw);
    if (tuples > guard)
      throw GuardError("tuple guard tripped: (2H+1)^(n^2*" + std::to_string(m) + ") > " +
                       to_string(static_cast<uint128>(guard)));
  }
}

}  // namespace

CountMap census_products(const BoxSpec& spec, int m, Variant variant, int workers) {
  if (m < 1) throw DomainError("census requires m >= 1");
  check_tuple_guard(spec, m);
  const std::uint64_t raw = spec.raw_cardinality();
  const int width = min_width_for_bound(product_entry_bound(spec.n, m, spec.H));
  CensusMeta meta{spec, m, variant, width};

  workers = clamp_workers(workers);
  auto ranges = split_range(raw, workers);
  std::vector<CountMap> parts;
  parts.reserve(ranges.size());
  for (std::size_t i = 0; i < ranges.size(); ++i) parts.emplace_back(meta);

  run_workers(static_cast<int>(ranges.size()), [&](int w) {
    auto [b, e] = ranges[static_cast<std::size_t>(w)];
    CountMap& local = parts[static_cast<std::size_t>(w)];
    // recursive descent over the remaining factors
    auto rec = [&](auto&& self, const Mat& partial, int depth) -> void {
      if (depth == m) {
        local.add(encode_key(partial, width), 1);
        return;
      }
      for_each_raw(spec, 0, raw, [&](const Mat& a) {
        if (!census_admits(spec, variant, a)) return;
        self(self, mat_mul(partial, a), depth + 1);
      });
    };
    for_each_raw(spec, b, e, [&](const Mat& a) {
      if (!census_admits(spec, variant, a)) return;
      rec(rec, a, 1);
    });
  });

  CountMap out(meta);
  for (auto& p : parts) out.merge_from(std::move(p));

  const std::uint64_t fc = filtered_cardinality(spec, variant, workers);
  if (out.total_multiplicity() != checked_pow_u128(fc, m))
    throw InternalError("census multiplicities do not sum to (box)^m");
  return out;
}

namespace {

// Box members flattened to int64 entries (box entries always fit: |e| <= H).
std::vector<std::int64_t> materialize_box(const BoxSpec& spec, Variant variant,
                                          std::uint64_t limit) {
  const std::uint64_t raw = spec.raw_cardinality();
  if (raw > limit)
    throw GuardError("box too large to materialize for convolution (raw " +
                     std::to_string(raw) + ")");
  std::vector<std::int64_t> flat;
  const int cells = spec.n * spec.n;
  for_each_raw(spec, 0, raw, [&](const Mat& m) {
    if (!census_admits(spec, variant, m)) return;
    for (int c = 0; c < cells; ++c)
      flat.push_back(static_cast<std::int64_t>(m.at(c / spec.n, c % spec.n)));
  });
  return flat;
}

Mat mul_flat(const Mat& p, const std::int64_t* b, int n) {
  Mat c(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int128 acc = 0;
      for (int k = 0; k < n; ++k)
        acc = checked_add(acc, checked_mul(p.at(i, k), static_cast<int128>(b[k * n + j])));
      c.at(i, j) = acc;
    }
  }
  return c;
}

}  // namespace

CountMap iterate_convolve(const CountMap& prev, const BoxSpec& spec, int workers) {
  if (!(prev.meta().spec == spec)) throw DomainError("iterate_convolve: box spec mismatch");
  const int m_next = prev.meta().m + 1;
  const int width = min_width_for_bound(product_entry_bound(spec.n, m_next, spec.H));
  const Variant variant = prev.meta().variant;

  const auto flat = materialize_box(spec, variant, std::uint64_t{1} << 24);
  const int cells = spec.n * spec.n;
  const std::uint64_t fc = static_cast<std::uint64_t>(flat.size()) / static_cast<std::uint64_t>(cells);
  const uint128 work = checked_mul_u128(prev.distinct(), fc);
  if (work > max_tuple_guard())
    throw GuardError("tuple guard tripped: #prev * box = " + to_string(work));

  CensusMeta meta{spec, m_next, variant, width};
  workers = clamp_workers(workers);
  std::vector<CountMap> parts;
  parts.reserve(static_cast<std::size_t>(workers));
  for (int i = 0; i < workers; ++i) parts.emplace_back(meta);

  // whole shards go to workers round-robin; no two workers share a source shard
  run_workers(workers, [&](int w) {
    CountMap& local = parts[static_cast<std::size_t>(w)];
    for (int s = w; s < CountMap::kShards; s += workers) {
      prev.for_each_shard(s, [&](const MatKey& k, std::uint64_t mult) {
        const Mat p = decode_key(k);
        for (std::uint64_t bi = 0; bi < fc; ++bi) {
          const Mat prod = mul_flat(p, flat.data() + bi * static_cast<std::uint64_t>(cells),
                                    spec.n);
          local.add(encode_key(prod, width), mult);
        }
      });
    }
  });

  CountMap out(meta);
  for (auto& p : parts) out.merge_from(std::move(p));

  const uint128 expected = checked_mul_u128(prev.total_multiplicity(), fc);
  if (out.total_multiplicity() != expected)
    throw InternalError("convolve multiplicities do not sum to (sum before) * box");
  return out;
}

namespace {

// Adjugate via cofactor expansion; exact, n <= 6.
Mat adjugate(const Mat& a) {
  const int n = a.n();
  Mat adj(n);
  if (n == 1) {
    adj.at(0, 0) = 1;
    return adj;
  }
  Mat minor(n - 1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int r = 0;
      for (int ii = 0; ii < n; ++ii) {
        if (ii == i) continue;
        int c = 0;
        for (int jj = 0; jj < n; ++jj) {
          if (jj == j) continue;
          minor.at(r, c) = a.at(ii, jj);
          ++c;
        }
        ++r;
      }
      const int128 cof = ((i + j) % 2 == 0) ? det(minor) : checked_sub(0, det(minor));
      adj.at(j, i) = cof;  // transposed
    }
  }
  return adj;
}

}  // namespace

std::uint64_t count_solutions(const BoxSpec& spec, int m, const Mat& c, int workers) {
  if (c.n() != spec.n) throw DimensionError("count_solutions: C has wrong dimension");
  if (m < 1) throw DomainError("count_solutions requires m >= 1");

  bool bound_known = true;
  int128 bound = 0;
  try {
    bound = product_entry_bound(spec.n, m, spec.H);
  } catch (const OverflowError&) {
    bound_known = false;
  }
  if (bound_known && c.max_abs_entry() > bound) return 0;

  if (m == 1) return (c.max_abs_entry() <= spec.H && spec.admits(c)) ? 1 : 0;

  const std::uint64_t raw = spec.raw_cardinality();
  workers = clamp_workers(workers);

  if (m == 2 && det(c) != 0) {
    // A nonsingular and B = A^{-1} C integral and in the box
    auto ranges = split_range(raw, workers);
    std::vector<std::uint64_t> parts(ranges.size(), 0);
    run_workers(static_cast<int>(ranges.size()), [&](int w) {
      auto [b, e] = ranges[static_cast<std::size_t>(w)];
      std::uint64_t cnt = 0;
      const int n = spec.n;
      for_each_raw(spec, b, e, [&](const Mat& a) {
        if (!spec.admits(a)) return;
        const int128 da = det(a);
        if (da == 0) return;
        const Mat adjc = mat_mul(adjugate(a), c);
        Mat bmat(n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const int128 num = adjc.at(i, j);
            if (num % da != 0) return;
            const int128 q = num / da;
            if (abs128(q) > spec.H) return;
            bmat.at(i, j) = q;
          }
        if (!spec.admits(bmat)) return;
        ++cnt;
      });
      parts[static_cast<std::size_t>(w)] = cnt;
    });
    std::uint64_t out = 0;
    for (std::uint64_t v : parts) out = checked_add_u64(out, v);
    return out;
  }

  check_tuple_guard(spec, m);
  auto ranges = split_range(raw, workers);
  std::vector<std::uint64_t> parts(ranges.size(), 0);
  run_workers(static_cast<int>(ranges.size()), [&](int w) {
    auto [b, e] = ranges[static_cast<std::size_t>(w)];
    std::uint64_t cnt = 0;
    auto rec = [&](auto&& self, const Mat& partial, int depth) -> void {
      if (depth == m) {
        if (partial == c) ++cnt;
        return;
      }
      for_each_raw(spec, 0, raw, [&](const Mat& a) {
        if (!spec.admits(a)) return;
        self(self, mat_mul(partial, a), depth + 1);
      });
    };
    for_each_raw(spec, b, e, [&](const Mat& a) {
      if (!spec.admits(a)) return;
      rec(rec, a, 1);
    });
    parts[static_cast<std::size_t>(w)] = cnt;
  });
  std::uint64_t out = 0;
  for (std::uint64_t v : parts) out = checked_add_u64(out, v);
  return out;
}

uint128 count_pairs(const BoxSpec& spec, int m, Variant variant, int workers) {
  const CountMap map = census_products(spec, m, variant, workers);
  uint128 total = 0;
  map.for_each([&](const MatKey&, std::uint64_t r) {
    total = checked_add_u128(total, checked_mul_u128(r, r));
  });
  return total;
}

namespace {

uint128 multiset_count(long long H, int m) {
  // C(H+m-1, m)
  uint128 num = 1;
  for (int i = 0; i < m; ++i)
    num = checked_mul_u128(num, static_cast<std::uint64_t>(H + i));
  uint128 den = 1;
  for (int i = 1; i <= m; ++i) den = checked_mul_u128(den, static_cast<std::uint64_t>(i));
  return num / den;
}

}  // namespace

std::uint64_t scalar_table_positive(long long H, int m) {
  if (H < 1) throw DomainError("scalar_table requires H >= 1");
  if (m < 1) throw DomainError("scalar_table requires m >= 1");
  if (multiset_count(H, m) > max_tuple_guard())
    throw GuardError("scalar table guard tripped: too many factor multisets");
  std::unordered_set<std::uint64_t> products;
  // nondecreasing tuples cover every product of a multiset exactly once
  auto rec = [&](auto&& self, long long lo, int depth, std::uint64_t partial) -> void {
    if (depth == m) {
      products.insert(partial);
      return;
    }
    for (long long a = lo; a <= H; ++a)
      self(self, a, depth + 1, checked_mul_u64(partial, static_cast<std::uint64_t>(a)));
  };
  rec(rec, 1, 0, 1);
  return products.size();
}

std::uint64_t scalar_table(long long H, int m) {
  return checked_add_u64(checked_mul_u64(2, scalar_table_positive(H, m)), 1);
}

CensusResult summarize(const CountMap& map, std::uint64_t wall_ms) {
  const CensusMeta& meta = map.meta();
  CensusResult r;
  r.n = meta.spec.n;
  r.H = meta.spec.H;
  r.m = meta.m;
  r.variant = meta.variant;
  r.distinct = map.distinct();
  const uint128 total = map.total_multiplicity();
  if (total > static_cast<uint128>(~std::uint64_t{0}))
    throw OverflowError("total tuple count exceeds 64 bits");
  r.total_tuples = static_cast<std::uint64_t>(total);
  const MatKey* best = nullptr;
  std::uint64_t best_mult = 0;
  map.for_each([&](const MatKey& k, std::uint64_t v) {
    if (v > best_mult || (v == best_mult && best && k.bytes < best->bytes)) {
      best = &k;
      best_mult = v;
    }
  });
  if (best) {
    r.max_multiplicity = best_mult;
    r.argmax_key_hex = best->hex();
  }
  r.wall_ms = wall_ms;
  return r;
}

}  // namespace mcensus
