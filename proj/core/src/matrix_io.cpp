#include "mcensus/matrix_io.hpp"

namespace mcensus {

namespace {

int checked_dim(const json& j) {
  if (!j.is_array() || j.empty()) throw DomainError("matrix JSON must be a nonempty array of rows");
  const int n = static_cast<int>(j.size());
  for (const auto& row : j) {
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw DomainError("matrix JSON must be square (n rows of n entries)");
  }
  return n;
}

int128 int128_from_json(const json& v) {
  if (v.is_number_integer()) {
    if (v.is_number_unsigned()) return static_cast<int128>(v.get<std::uint64_t>());
    return static_cast<int128>(v.get<std::int64_t>());
  }
  if (v.is_string()) return parse_int128(v.get<std::string>());
  throw DomainError("matrix entry must be an integer (or decimal string)");
}

json int128_to_json(int128 v) {
  constexpr int128 lo = std::numeric_limits<std::int64_t>::min();
  constexpr int128 hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return json(static_cast<std::int64_t>(v));
  return json(to_string(v));
}

json rat_to_json(const Rat& r) {
  if (r.is_integer()) {
    const mpz_class num = r.num();
    if (num.fits_slong_p()) return json(num.get_si());
  }
  return json(r.str());
}

template <class K, class EntryToJson>
json field_mat_to_json_impl(const FieldMat<K>& a, EntryToJson&& entry) {
  json rows = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(entry(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class K, class EntryToJson>
json vectors_to_json(const std::vector<std::vector<K>>& vs, EntryToJson&& entry) {
  json out = json::array();
  for (const auto& v : vs) {
    json row = json::array();
    for (const K& x : v) row.push_back(entry(x));
    out.push_back(std::move(row));
  }
  return out;
}

template <class K, class EntryToJson>
json trace_to_json_impl(const ConstructionTrace<K>& t, EntryToJson&& entry) {
  json out;
  out["null_basis"] = vectors_to_json(t.null_basis, entry);
  out["rref_rows"] = vectors_to_json(t.rref_rows, entry);
  out["pivots"] = t.pivots;
  out["b_prime"] = field_mat_to_json_impl(t.b_prime, entry);
  out["b"] = field_mat_to_json_impl(t.b, entry);
  return out;
}

}  // namespace

Mat mat_from_json(const json& j) {
  const int n = checked_dim(j);
  Mat a(n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) a.at(i, c) = int128_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
  return a;
}

json mat_to_json(const Mat& a) {
  json rows = json::array();
  for (int i = 0; i < a.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.n(); ++j) row.push_back(int128_to_json(a.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

FieldMat<Rat> rat_mat_from_json(const json& j) {
  const int n = checked_dim(j);
  FieldMat<Rat> a(n, n);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) {
      const json& v = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (v.is_number_integer()) {
        a.at(i, c) = v.is_number_unsigned()
                         ? Rat::from_int128(static_cast<int128>(v.get<std::uint64_t>()))
                         : Rat::from_int128(static_cast<int128>(v.get<std::int64_t>()));
      } else if (v.is_string()) {
        a.at(i, c) = Rat::parse(v.get<std::string>());
      } else {
        throw DomainError("rational entry must be an integer or \"a/b\" string");
      }
    }
  return a;
}

FieldMat<Fp> fp_mat_from_json(const json& j, const PrimeField& f) {
  const int n = checked_dim(j);
  FieldMat<Fp> a(n, n, f);
  for (int i = 0; i < n; ++i)
    for (int c = 0; c < n; ++c) {
      const json& v = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      a.at(i, c) = Fp{f.reduce(int128_from_json(v)), f.p()};
    }
  return a;
}

json field_mat_to_json(const FieldMat<Rat>& a) {
  return field_mat_to_json_impl(a, rat_to_json);
}

json field_mat_to_json(const FieldMat<Fp>& a) {
  return field_mat_to_json_impl(a, [](const Fp& x) { return json(x.v); });
}

json trace_to_json(const ConstructionTrace<Rat>& t) {
  return trace_to_json_impl(t, rat_to_json);
}

json trace_to_json(const ConstructionTrace<Fp>& t) {
  return trace_to_json_impl(t, [](const Fp& x) { return json(x.v); });
}

json census_result_to_json(const CensusResult& r) {
  json out;
  out["n"] = r.n;
  out["H"] = r.H;
  out["m"] = r.m;
  out["variant"] = variant_name(r.variant);
  out["distinct"] = r.distinct;
  out["total_tuples"] = r.total_tuples;
  out["max_multiplicity"] = r.max_multiplicity;
  out["argmax_key_hex"] = r.argmax_key_hex;
  out["wall_ms"] = r.wall_ms;
  return out;
}

}  // namespace mcensus
