// Acceptance suite: one pass/fail line per criterion, exit 1 on any failure.
//
// Every tolerance is pinned in code. Oracles here are deliberately naive and
// independent of the library paths they judge.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mcensus/experiment.hpp"
#include "mcensus/field_mat.hpp"
#include "mcensus/rank_counts.hpp"

using namespace mcensus;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double elapsed_s(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

using EntryKey = std::vector<long long>;

EntryKey flat(const Mat& m) {
  EntryKey v;
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) v.push_back(static_cast<long long>(m.at(i, j)));
  return v;
}

// ---- criterion 1: exhaustive census agreement ------------------------------

void criterion_census_oracle(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  const BoxSpec spec{2, 1};

  std::map<EntryKey, std::uint64_t> oracle;
  for (long long a = -1; a <= 1; ++a)
    for (long long b = -1; b <= 1; ++b)
      for (long long x = -1; x <= 1; ++x)
        for (long long y = -1; y <= 1; ++y)
          for (long long e = -1; e <= 1; ++e)
            for (long long f = -1; f <= 1; ++f)
              for (long long g = -1; g <= 1; ++g)
                for (long long h = -1; h <= 1; ++h) {
                  // [[a,b],[x,y]] * [[e,f],[g,h]] by hand
                  EntryKey p{a * e + b * g, a * f + b * h, x * e + y * g, x * f + y * h};
                  ++oracle[p];
                }

  const CountMap map = census_products(spec, 2);
  c.require(map.distinct() == oracle.size(),
            "distinct " + std::to_string(map.distinct()) + " != oracle " +
                std::to_string(oracle.size()));
  std::uint64_t mismatches = 0;
  map.for_each([&](const MatKey& k, std::uint64_t mult) {
    const auto it = oracle.find(flat(decode_key(k)));
    if (it == oracle.end() || it->second != mult) ++mismatches;
  });
  c.require(mismatches == 0, std::to_string(mismatches) + " multiplicity mismatches");

  const double dt = elapsed_s(t0);
  c.require(dt < 5.0, "runtime " + fmt(dt) + "s >= 5s");
  c.note("distinct=" + std::to_string(map.distinct()) + ", oracle over 81^2 pairs, " + fmt(dt) +
         "s");
}

// ---- criterion 2: sum-of-squares identity ----------------------------------

void criterion_pairs_identity(Check& c) {
  for (long long H = 1; H <= 6; ++H) {
    // exhaustive count of (a,b,c,d) with ab = cd
    std::uint64_t quad = 0;
    for (long long a = -H; a <= H; ++a)
      for (long long b = -H; b <= H; ++b)
        for (long long x = -H; x <= H; ++x)
          for (long long y = -H; y <= H; ++y)
            if (a * b == x * y) ++quad;
    const uint128 lib = count_pairs(BoxSpec{1, H}, 2);
    c.require(lib == quad, "H=" + std::to_string(H) + ": pairs " + to_string(lib) +
                               " != quadruple count " + std::to_string(quad));
  }
  const uint128 h1 = count_pairs(BoxSpec{1, 1}, 2);
  c.require(h1 == 33, "H=1 pairs != 33");
  const std::uint64_t det0 = count_by_det(BoxSpec{2, 1}).at(0);
  c.require(h1 == det0, "pairs(n=1,H=1) != detstats d=0 (" + std::to_string(det0) + ")");
  c.note("H=1..6 exact, 33 = singular 2x2 count cross-check");
}

// ---- criterion 3: Theorem 3.6 contract -------------------------------------

template <class K>
bool construction_contract_holds(const FieldMat<K>& a) {
  const auto lif = left_identity_factor(a);
  const int n = a.n();
  const int k = rank_of(a);
  if (!(lif.b * a == a)) return false;
  if (rank_of(lif.b) != k) return false;
  if (k > 0 && k < n) {
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int z : lif.trace.pivots) {
      is_pivot[static_cast<std::size_t>(z - 1)] = true;
      for (int i = 0; i < n; ++i)
        if (!lif.b.at(i, z - 1).is_zero()) return false;
    }
    for (int j = 0; j < n; ++j) {
      if (is_pivot[static_cast<std::size_t>(j)]) continue;
      for (int col = 0; col < n; ++col)
        if (!(lif.b.at(j, col) == a.make(col == j ? 1 : 0))) return false;
    }
  }
  return true;
}

template <class K>
std::uint64_t fuzz_constructions(std::mt19937_64& rng, typename FieldTraits<K>::Ctx ctx,
                                 int cases) {
  std::uint64_t failures = 0;
  for (int t = 0; t < cases; ++t) {
    const int n = 1 + t % 5;
    const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    FieldMat<K> a(n, n, ctx);
    if (r > 0) {
      FieldMat<K> u(n, r, ctx), v(r, n, ctx);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) {
          u.at(i, j) = FieldTraits<K>::make(ctx, static_cast<long>(rng() % 19) - 9);
          v.at(j, i) = FieldTraits<K>::make(ctx, static_cast<long>(rng() % 19) - 9);
        }
      a = u * v;
    }
    if (!construction_contract_holds(a)) ++failures;
  }
  return failures;
}

void criterion_construction(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240811);
  std::uint64_t failures = fuzz_constructions<Rat>(rng, {}, 1000);
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 101ull})
    failures += fuzz_constructions<Fp>(rng, PrimeField(p), 1000);
  c.require(failures == 0, std::to_string(failures) + " contract failures");
  const double dt = elapsed_s(t0);
  c.require(dt < 30.0, "runtime " + fmt(dt) + "s >= 30s");
  c.note("6000 cases over {Q, F2, F3, F5, F7, F101}, n cycling 1..5, " + fmt(dt) + "s");
}

// ---- criterion 4: Theorem 2.4 by enumeration -------------------------------

void criterion_product_sets(Check& c) {
  const auto t0 = std::chrono::steady_clock::now();
  for (auto [q, n] : {std::pair{2ull, 2}, {3ull, 2}, {2ull, 3}}) {
    const RankProfile prof = fisher_rank_counts(q, n);
    for (int k1 = 0; k1 <= n; ++k1)
      for (int k2 = 0; k2 <= n; ++k2) {
        const ProductSetCheck check = verify_product_set_field(q, n, {k1, k2});
        const std::string tag = "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                                " k=(" + std::to_string(k1) + "," + std::to_string(k2) + ")";
        c.require(check.pass, tag + ": set mismatch");
        c.require(mpz_class(check.cardinality) == prof.rank_le(std::min(k1, k2)),
                  tag + ": cardinality != Fisher prefix sum");
      }
  }
  c.require(verify_product_set_field(2, 2, {1, 1}).cardinality == 10, "F2 n=2 k=1 != 10");
  c.require(verify_product_set_field(3, 2, {1, 1}).cardinality == 33, "F3 n=2 k=1 != 33");
  const double dt = elapsed_s(t0);
  c.require(dt < 60.0, "runtime " + fmt(dt) + "s >= 60s");
  c.note("34 cap pairs over (2,2),(3,2),(2,3), set equality + Fisher, " + fmt(dt) + "s");
}

// ---- criterion 5: Corollary 2.5 at m=3 --------------------------------------

void criterion_triple_products(Check& c) {
  const RankProfile prof = fisher_rank_counts(2, 2);
  for (int k1 = 0; k1 <= 2; ++k1)
    for (int k2 = 0; k2 <= 2; ++k2)
      for (int k3 = 0; k3 <= 2; ++k3) {
        const ProductSetCheck check = verify_product_set_field(2, 2, {k1, k2, k3});
        const std::string tag =
            "(" + std::to_string(k1) + "," + std::to_string(k2) + "," + std::to_string(k3) + ")";
        c.require(check.pass, tag + ": set mismatch");
        c.require(mpz_class(check.cardinality) == prof.rank_le(std::min({k1, k2, k3})),
                  tag + ": cardinality mismatch");
      }
  c.note("all 27 cap triples over F2, n=2, exact");
}

// ---- criterion 6: exponent brackets -----------------------------------------

void criterion_exponent_brackets(Check& c) {
  const std::vector<long long> grid{2, 4, 8, 16};

  ExperimentConfig box;
  box.quantity = Quantity::Box;
  box.n = 2;
  box.grid = grid;
  const double box_slope = run_experiment(box).fit->slope;
  c.require(std::abs(box_slope - 4.0) <= 0.2,
            "box slope " + fmt(box_slope) + " outside |slope-4| <= 0.2 (exact law (2H+1)^4 "
            "fits to " + fmt(box_slope) + " on this grid)");

  ExperimentConfig dz;
  dz.quantity = Quantity::DetZero;
  dz.n = 2;
  dz.grid = grid;
  const double dz_slope = run_experiment(dz).fit->slope;
  c.require(dz_slope >= 2.0 && dz_slope <= 2.6,
            "det_zero slope " + fmt(dz_slope) + " outside [2.0, 2.6]");

  ExperimentConfig rk;
  rk.quantity = Quantity::RankK;
  rk.n = 2;
  rk.k = 1;
  rk.grid = grid;
  const double rk_slope = run_experiment(rk).fit->slope;
  c.require(std::abs(rk_slope - 2.0) <= 0.35,
            "rank-1 slope " + fmt(rk_slope) + " outside 2 +- 0.35");

  ExperimentConfig t2;
  t2.quantity = Quantity::TmNonsingularC;
  t2.n = 2;
  t2.m = 2;
  t2.grid = grid;
  const double t2_slope = run_experiment(t2).fit->slope;
  c.require(t2_slope <= 2.4, "T2(I2) slope " + fmt(t2_slope) + " > 2.4");

  c.note("slopes on {2,4,8,16}: box=" + fmt(box_slope) + ", det_zero=" + fmt(dz_slope) +
         ", rank1=" + fmt(rk_slope) + ", T2=" + fmt(t2_slope));
}

// ---- criterion 7: W lower-bound sanity --------------------------------------

void criterion_w_lower(Check& c) {
  std::vector<std::pair<double, double>> points;
  for (long long H = 1; H <= 4; ++H) {
    const BoxSpec spec{2, H};
    const std::uint64_t w = census_products(spec, 2).distinct();
    const std::uint64_t box = spec.raw_cardinality();
    c.require(w >= box, "H=" + std::to_string(H) + ": #W " + std::to_string(w) +
                            " < box " + std::to_string(box));
    points.emplace_back(static_cast<double>(H), static_cast<double>(w));
  }
  const double slope = fit_loglog(points).slope;
  c.require(slope >= 4.0, "W slope " + fmt(slope) + " < 4.0");
  c.note("#W(H=1..4) = " + std::to_string(static_cast<long long>(points[0].second)) + ".." +
         std::to_string(static_cast<long long>(points[3].second)) + ", slope " + fmt(slope));
}

// ---- criterion 8: scalar table -----------------------------------------------

void criterion_scalar_table(Check& c) {
  auto brute = [](long long H) {
    std::set<long long> vals;
    for (long long a = -H; a <= H; ++a)
      for (long long b = -H; b <= H; ++b) vals.insert(a * b);
    return static_cast<std::uint64_t>(vals.size());
  };
  for (long long H : {1LL, 3LL, 10LL}) {
    const std::uint64_t lib = scalar_table(H, 2);
    const std::uint64_t oracle = brute(H);
    c.require(lib == oracle, "H=" + std::to_string(H) + ": " + std::to_string(lib) +
                                 " != brute " + std::to_string(oracle));
  }
  c.require(scalar_table(1, 2) == 3, "A_2(1) != 3");
  c.require(scalar_table(3, 2) == 13, "A_2(3) != 13");
  std::uint64_t prev = 0;
  bool monotone = true;
  for (long long H = 1; H <= 10; ++H) {
    const std::uint64_t v = scalar_table(H, 2);
    monotone = monotone && v >= prev;
    prev = v;
  }
  c.require(monotone, "A_2 not nondecreasing in H");
  c.note("A_2(1)=3, A_2(3)=13, A_2(10)=" + std::to_string(scalar_table(10, 2)) +
         ", brute-force exact, monotone");
}

// ---- criterion 9: determinism ------------------------------------------------

void criterion_determinism(Check& c) {
  const BoxSpec spec{2, 1};
  const std::string census1 = census_products(spec, 2, Variant::All, 1).serialize();
  const std::string census8 = census_products(spec, 2, Variant::All, 8).serialize();
  c.require(census1 == census8, "census binary differs between 1 and 8 workers");

  const std::string det1 = count_by_det(BoxSpec{2, 2}, 1).to_csv();
  const std::string det8 = count_by_det(BoxSpec{2, 2}, 8).to_csv();
  c.require(det1 == det8, "detstats CSV differs between 1 and 8 workers");

  c.require(count_pairs(BoxSpec{1, 3}, 2, Variant::All, 1) ==
                count_pairs(BoxSpec{1, 3}, 2, Variant::All, 8),
            "pairs count differs between 1 and 8 workers");

  ExperimentConfig cfg;
  cfg.quantity = Quantity::DetZero;
  cfg.n = 2;
  cfg.grid = {2, 4, 8};
  cfg.workers = 1;
  const std::string csv1 = report_csv(run_experiment(cfg));
  cfg.workers = 8;
  const std::string csv8 = report_csv(run_experiment(cfg));
  c.require(csv1 == csv8, "fit CSV differs between 1 and 8 workers");

  const std::string conv1 =
      iterate_convolve(census_products(spec, 1, Variant::All, 1), spec, 1).serialize();
  const std::string conv8 =
      iterate_convolve(census_products(spec, 1, Variant::All, 8), spec, 8).serialize();
  c.require(conv1 == conv8, "convolve binary differs between 1 and 8 workers");

  c.note("census/convolve binaries, detstats CSV, pairs count, fit CSV byte-identical");
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<void(Check&)> fn;
  };
  const std::vector<Criterion> criteria{
      {"1 exhaustive census agreement", criterion_census_oracle},
      {"2 sum-of-squares pair identity", criterion_pairs_identity},
      {"3 left-identity-factor contract", criterion_construction},
      {"4 rank-capped product sets (pairs)", criterion_product_sets},
      {"5 rank-capped product sets (triples)", criterion_triple_products},
      {"6 exponent brackets", criterion_exponent_brackets},
      {"7 product-set lower bound", criterion_w_lower},
      {"8 scalar multiplication table", criterion_scalar_table},
      {"9 worker-count determinism", criterion_determinism},
  };

  int failures = 0;
  for (const auto& crit : criteria) {
    Check c;
    try {
      crit.fn(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    if (!c.ok) ++failures;
    std::cout << (c.ok ? "[PASS] " : "[FAIL] ") << "criterion " << crit.name;
    if (!c.detail.empty()) std::cout << " — " << c.detail;
    std::cout << "\n";
  }
  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}
