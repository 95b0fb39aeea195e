// mcensus: census and construction tool for exact matrix product statistics.
//
// Exit codes: 0 success, 1 usage or input error, 2 resource guard tripped,
// 3 internal invariant failure (overflow, width exhaustion, broken self-check).

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "mcensus/experiment.hpp"
#include "mcensus/matrix_io.hpp"
#include "mcensus/parallel.hpp"
#include "mcensus/rank_counts.hpp"

using namespace mcensus;

namespace {

struct CommonOpts {
  std::string out;
  int workers = 0;
  std::uint64_t seed = 0;
};

void emit(const CommonOpts& opts, const std::string& data) {
  if (opts.out.empty()) {
    std::cout << data;
    return;
  }
  std::ofstream f(opts.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file: " + opts.out);
  f << data;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file: " + path);
  f << data;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open input file: " + path);
  json j;
  try {
    f >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("bad JSON in ") + path + ": " + e.what());
  }
  return j;
}

struct FilterOpts {
  std::string name = "all";
  int k = 0;
  long long d = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--filter", name, "box filter: all|nonsingular|rank_eq|rank_le|det_eq")
        ->default_val("all");
    cmd->add_option("--filter-k", k, "rank for rank_eq/rank_le filters");
    cmd->add_option("--filter-d", d, "determinant for the det_eq filter");
  }

  BoxFilter parse() const {
    if (name == "all") return BoxFilter::All;
    if (name == "nonsingular") return BoxFilter::Nonsingular;
    if (name == "rank_eq") return BoxFilter::RankEq;
    if (name == "rank_le") return BoxFilter::RankLe;
    if (name == "det_eq") return BoxFilter::DetEq;
    throw DomainError("unknown filter: " + name);
  }

  BoxSpec spec(int n, long long H) const { return BoxSpec{n, H, parse(), k, d}; }
};

Variant parse_variant(const std::string& s) {
  if (s == "all") return Variant::All;
  if (s == "nonsingular") return Variant::Nonsingular;
  throw DomainError("unknown variant: " + s);
}

// --field q|Q|rational selects the rationals, a number selects F_p
bool field_is_rational(const std::string& field) {
  return field == "q" || field == "Q" || field == "rational";
}

std::uint64_t parse_prime_arg(const std::string& field) {
  try {
    std::size_t pos = 0;
    const unsigned long long p = std::stoull(field, &pos);
    if (pos != field.size()) throw std::invalid_argument(field);
    return p;
  } catch (const std::exception&) {
    throw DomainError("--field expects q (rationals) or a prime modulus, got: " + field);
  }
}

int run_census(const CommonOpts& opts, int n, long long H, int m, const std::string& variant,
               const FilterOpts& filter, const std::string& path_kind,
               const std::string& map_out) {
  const BoxSpec spec = filter.spec(n, H);
  const Variant v = parse_variant(variant);
  const auto t0 = std::chrono::steady_clock::now();
  CountMap map = [&] {
    if (path_kind == "exhaustive") return census_products(spec, m, v, opts.workers);
    if (path_kind != "convolve") throw DomainError("unknown path: " + path_kind);
    CountMap acc = census_products(spec, 1, v, opts.workers);
    for (int i = 1; i < m; ++i) acc = iterate_convolve(acc, spec, opts.workers);
    return acc;
  }();
  const auto wall =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
  const CensusResult result = summarize(map, static_cast<std::uint64_t>(wall.count()));
  if (!map_out.empty()) write_file(map_out, map.serialize());
  emit(opts, census_result_to_json(result).dump(2) + "\n");
  return 0;
}

int run_construct(const CommonOpts& opts, const std::string& field, const std::string& in,
                  std::uint64_t fuzz) {
  if (fuzz > 0) {
    // randomized contract check; deterministic under --seed
    std::mt19937_64 rng(opts.seed);
    std::uint64_t failures = 0;
    for (std::uint64_t i = 0; i < fuzz; ++i) {
      const int n = 1 + static_cast<int>(rng() % 5);
      const int r = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      auto entry = [&]() { return static_cast<long>(rng() % 19) - 9; };
      if (field_is_rational(field)) {
        FieldMat<Rat> u(n, std::max(r, 1)), v(std::max(r, 1), n);
        if (r > 0)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < r; ++b) {
              u.at(a, b) = Rat(entry());
              v.at(b, a) = Rat(entry());
            }
        const FieldMat<Rat> m = r == 0 ? FieldMat<Rat>(n, n) : u * v;
        const auto lif = left_identity_factor(m);
        if (!(lif.b * m == m) || rank_of(lif.b) != rank_of(m)) ++failures;
      } else {
        const PrimeField f(parse_prime_arg(field));
        FieldMat<Fp> u(n, std::max(r, 1), f), v(std::max(r, 1), n, f);
        if (r > 0)
          for (int a = 0; a < n; ++a)
            for (int b = 0; b < r; ++b) {
              u.at(a, b) = FieldTraits<Fp>::make(f, entry());
              v.at(b, a) = FieldTraits<Fp>::make(f, entry());
            }
        const FieldMat<Fp> m = r == 0 ? FieldMat<Fp>(n, n, f) : u * v;
        const auto lif = left_identity_factor(m);
        if (!(lif.b * m == m) || rank_of(lif.b) != rank_of(m)) ++failures;
      }
    }
    json outj;
    outj["cases"] = fuzz;
    outj["failures"] = failures;
    emit(opts, outj.dump(2) + "\n");
    return failures == 0 ? 0 : 3;
  }

  if (in.empty()) throw DomainError("construct needs --in (or --fuzz N)");
  const json j = read_json_file(in);
  json outj;
  if (field_is_rational(field)) {
    const FieldMat<Rat> a = rat_mat_from_json(j);
    const auto lif = left_identity_factor(a);
    outj["b"] = field_mat_to_json(lif.b);
    outj["rank"] = rank_of(a);
    outj["trace"] = trace_to_json(lif.trace);
  } else {
    const PrimeField f(parse_prime_arg(field));
    const FieldMat<Fp> a = fp_mat_from_json(j, f);
    const auto lif = left_identity_factor(a);
    outj["b"] = field_mat_to_json(lif.b);
    outj["rank"] = rank_of(a);
    outj["trace"] = trace_to_json(lif.trace);
  }
  emit(opts, outj.dump(2) + "\n");
  return 0;
}

int run_decompose(const CommonOpts& opts, const std::string& field, const std::string& in, int k1,
                  int k2) {
  const json j = read_json_file(in);
  json outj;
  if (field_is_rational(field)) {
    const auto [x, y] = bounded_rank_decompose(rat_mat_from_json(j), k1, k2);
    outj["x"] = field_mat_to_json(x);
    outj["y"] = field_mat_to_json(y);
  } else {
    const PrimeField f(parse_prime_arg(field));
    const auto [x, y] = bounded_rank_decompose(fp_mat_from_json(j, f), k1, k2);
    outj["x"] = field_mat_to_json(x);
    outj["y"] = field_mat_to_json(y);
  }
  emit(opts, outj.dump(2) + "\n");
  return 0;
}

int run_fieldcensus(const CommonOpts& opts, std::uint64_t q, int n, std::vector<int> caps,
                    bool fisher_only) {
  const RankProfile prof = fisher_rank_counts(q, n);
  json outj;
  outj["q"] = q;
  outj["n"] = n;
  json fisher = json::array();
  for (const mpz_class& c : prof.counts) fisher.push_back(c.get_str());
  outj["fisher_rank_counts"] = fisher;
  if (!fisher_only) {
    const ProductSetCheck check = verify_product_set_field(q, n, caps, opts.workers);
    outj["caps"] = caps;
    outj["cardinality"] = check.cardinality;
    outj["expected"] = check.expected;
    outj["pass"] = check.pass;
    if (!check.pass) {
      emit(opts, outj.dump(2) + "\n");
      return 3;  // the enumerated set contradicts the classification
    }
  }
  emit(opts, outj.dump(2) + "\n");
  return 0;
}

int run_fit(const CommonOpts& opts, const std::string& quantity, int n, int m, int k,
            const std::string& variant, const std::vector<long long>& grid, const std::string& in,
            const std::string& plot_data) {
  ExperimentConfig cfg;
  cfg.quantity = quantity_from_name(quantity);
  cfg.n = n;
  cfg.m = m;
  cfg.k = k;
  cfg.variant = parse_variant(variant);
  cfg.grid = grid;
  cfg.workers = opts.workers;
  if (!in.empty()) cfg.c = mat_from_json(read_json_file(in));
  const ExperimentReport rep = run_experiment(cfg);
  for (const ReportRow& row : rep.rows)
    if (!row.error.empty())
      std::cerr << "warning: H=" << row.H << " skipped: " << row.error << "\n";
  if (!plot_data.empty()) write_file(plot_data, report_plot_data(rep));
  emit(opts, report_csv(rep));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact census and construction tool for matrix product statistics"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--out", opts.out, "write data output to a file instead of stdout");
  app.add_option("--workers", opts.workers, "worker threads (default: available cores)");
  app.add_option("--seed", opts.seed, "seed for randomized subsets (fuzz modes)");

  int n = 2, m = 2, k1 = 1, k2 = 1;
  long long H = 1;
  std::uint64_t q = 2;
  std::string variant = "all", field = "q", in, map_out, path_kind = "exhaustive";
  std::string quantity = "box", plot_data;
  std::vector<long long> grid;
  std::vector<int> caps;
  int fit_k = 1;
  std::uint64_t fuzz = 0;
  bool positive_only = false, fisher_only = false;
  FilterOpts census_filter, solve_filter, det_filter, rank_filter;

  auto* census = app.add_subcommand("census", "exact product census: distinct values and r_m");
  census->add_option("-n,--dim", n)->required();
  census->add_option("-H,--bound", H)->required();
  census->add_option("-m,--factors", m)->required();
  census->add_option("--variant", variant, "all|nonsingular")->default_val("all");
  census->add_option("--path", path_kind, "exhaustive|convolve")->default_val("exhaustive");
  census->add_option("--map-out", map_out, "also write the binary multiplicity map");
  census_filter.attach(census);

  auto* solve = app.add_subcommand("solve", "count m-tuples with product equal to C");
  solve->add_option("-n,--dim", n)->required();
  solve->add_option("-H,--bound", H)->required();
  solve->add_option("-m,--factors", m)->required();
  solve->add_option("--in", in, "JSON matrix C")->required();
  solve_filter.attach(solve);

  auto* pairs = app.add_subcommand("pairs", "count 2m-tuples with equal products");
  pairs->add_option("-n,--dim", n)->required();
  pairs->add_option("-H,--bound", H)->required();
  pairs->add_option("-m,--factors", m)->required();
  pairs->add_option("--variant", variant, "all|nonsingular")->default_val("all");

  auto* detstats = app.add_subcommand("detstats", "determinant distribution over the box");
  detstats->add_option("-n,--dim", n)->required();
  detstats->add_option("-H,--bound", H)->required();
  det_filter.attach(detstats);

  auto* rankstats = app.add_subcommand("rankstats", "rank distribution over the box");
  rankstats->add_option("-n,--dim", n)->required();
  rankstats->add_option("-H,--bound", H)->required();
  rank_filter.attach(rankstats);

  auto* scalartable = app.add_subcommand("scalartable", "distinct scalar products #A_m(H)");
  scalartable->add_option("-H,--bound", H)->required();
  scalartable->add_option("-m,--factors", m)->required();
  scalartable->add_flag("--positive", positive_only, "print the positive sub-table count");

  auto* construct = app.add_subcommand("construct", "left identity factor B with BA=A");
  construct->add_option("--field", field, "q (rationals) or a prime modulus")->default_val("q");
  construct->add_option("--in", in, "JSON matrix A");
  construct->add_option("--fuzz", fuzz, "run N random contract checks instead");

  auto* decompose = app.add_subcommand("decompose", "factor C = XY under rank caps");
  decompose->add_option("--field", field, "q (rationals) or a prime modulus")->default_val("q");
  decompose->add_option("--in", in, "JSON matrix C")->required();
  decompose->add_option("--k1", k1, "rank cap for X")->required();
  decompose->add_option("--k2", k2, "rank cap for Y")->required();

  auto* fieldcensus =
      app.add_subcommand("fieldcensus", "rank-capped product sets over F_q, with Fisher counts");
  fieldcensus->add_option("-q,--modulus", q)->required();
  fieldcensus->add_option("-n,--dim", n)->required();
  fieldcensus->add_option("--k1", k1);
  fieldcensus->add_option("--k2", k2);
  fieldcensus->add_option("--caps", caps, "explicit cap list (2..4 entries)")->delimiter(',');
  fieldcensus->add_flag("--fisher", fisher_only, "print only the Fisher rank counts");

  auto* fit = app.add_subcommand("fit", "H-grid experiments with log-log slope fits");
  fit->add_option("--quantity", quantity, "box|det_zero|rank_k|T_m_nonsingular_C|T_m_zero_C|"
                                          "pairs_nonsingular|pairs_all_m2|pairs_all_m3plus|W_lower|"
                                          "T_m_singular_C_m2|T_m_singular_C_m3plus")
      ->required();
  fit->add_option("-n,--dim", n)->required();
  fit->add_option("-m,--factors", m);
  fit->add_option("--k", fit_k, "rank for rank_k");
  fit->add_option("--grid", grid, "H values, strictly increasing")->required()->delimiter(',');
  fit->add_option("--variant", variant, "all|nonsingular")->default_val("all");
  fit->add_option("--in", in, "JSON matrix C for the T_m quantities");
  fit->add_option("--plot-data", plot_data, "also write gnuplot-friendly points");

  // global options may follow the subcommand
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (census->parsed())
      return run_census(opts, n, H, m, variant, census_filter, path_kind, map_out);
    if (solve->parsed()) {
      const Mat c = mat_from_json(read_json_file(in));
      const std::uint64_t count = count_solutions(solve_filter.spec(n, H), m, c, opts.workers);
      emit(opts, std::to_string(count) + "\n");
      return 0;
    }
    if (pairs->parsed()) {
      const uint128 count = count_pairs(BoxSpec{n, H}, m, parse_variant(variant), opts.workers);
      emit(opts, to_string(count) + "\n");
      return 0;
    }
    if (detstats->parsed()) {
      emit(opts, count_by_det(det_filter.spec(n, H), opts.workers).to_csv());
      return 0;
    }
    if (rankstats->parsed()) {
      emit(opts, count_by_rank(rank_filter.spec(n, H), opts.workers).to_csv());
      return 0;
    }
    if (scalartable->parsed()) {
      const std::uint64_t v = positive_only ? scalar_table_positive(H, m) : scalar_table(H, m);
      emit(opts, std::to_string(v) + "\n");
      return 0;
    }
    if (construct->parsed()) return run_construct(opts, field, in, fuzz);
    if (decompose->parsed()) return run_decompose(opts, field, in, k1, k2);
    if (fieldcensus->parsed()) {
      if (caps.empty()) caps = {k1, k2};
      return run_fieldcensus(opts, q, n, caps, fisher_only);
    }
    if (fit->parsed())
      return run_fit(opts, quantity, n, m, fit_k, variant, grid, in, plot_data);
    throw DomainError("no subcommand");
  } catch (const GuardError& e) {
    std::cerr << "guard: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const KeyWidthError& e) {
    std::cerr << "key width: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
