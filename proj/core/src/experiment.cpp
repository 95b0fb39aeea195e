#include "mcensus/experiment.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace mcensus {

namespace {

uint128 measure(const ExperimentConfig& cfg, long long H) {
  BoxSpec spec{cfg.n, H, BoxFilter::All, 0, 0};
  switch (cfg.quantity) {
    case Quantity::Box:
      return spec.raw_cardinality();  // counting is exact by construction
    case Quantity::DetZero:
      return count_by_det(spec, cfg.workers).at(0);
    case Quantity::RankK:
      return count_by_rank(spec, cfg.workers).at(cfg.k);
    case Quantity::TmNonsingularC:
    case Quantity::TmSingularCm2:
    case Quantity::TmSingularCm3plus:
    case Quantity::TmZeroC: {
      Mat c = cfg.c ? *cfg.c : Mat::identity(cfg.n);
      if (cfg.quantity == Quantity::TmZeroC) c = Mat(cfg.n);
      return count_solutions(spec, cfg.m, c, cfg.workers);
    }
    case Quantity::PairsNonsingular:
      return count_pairs(spec, cfg.m, Variant::Nonsingular, cfg.workers);
    case Quantity::PairsAllM2:
    case Quantity::PairsAllM3plus:
      return count_pairs(spec, cfg.m, Variant::All, cfg.workers);
    case Quantity::WLower:
      return census_products(spec, cfg.m, cfg.variant, cfg.workers).distinct();
  }
  throw DomainError("unknown quantity");
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.grid.empty()) throw DomainError("experiment grid is empty");
  for (std::size_t i = 1; i < cfg.grid.size(); ++i)
    if (cfg.grid[i] <= cfg.grid[i - 1]) throw DomainError("grid must be strictly increasing");
  // validates quantity/m/n/k combination up front
  theoretical_exponent(ReferenceBound{cfg.quantity, cfg.m, cfg.n, cfg.k});
  if (cfg.quantity == Quantity::TmNonsingularC && cfg.c && det(*cfg.c) == 0)
    throw DomainError("quantity expects a nonsingular C");
  if (cfg.quantity == Quantity::TmSingularCm2 || cfg.quantity == Quantity::TmSingularCm3plus) {
    if (!cfg.c) throw DomainError("quantity requires an explicit C matrix");
    if (det(*cfg.c) != 0 || cfg.c->is_zero())
      throw DomainError("quantity expects a singular nonzero C");
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  ExperimentReport report;
  report.theory = theoretical_exponent(ReferenceBound{cfg.quantity, cfg.m, cfg.n, cfg.k});
  std::vector<std::pair<double, double>> points;
  for (long long H : cfg.grid) {
    ReportRow row{cfg.quantity, cfg.m, cfg.n, H, std::nullopt, ""};
    try {
      const uint128 c = measure(cfg, H);
      row.count = c;
      if (c > 0) points.emplace_back(static_cast<double>(H), static_cast<double>(c));
    } catch (const GuardError& e) {
      row.error = e.what();
    }
    report.rows.push_back(std::move(row));
  }
  if (points.size() >= 3) report.fit = fit_loglog(points);
  return report;
}

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << v;
  return os.str();
}

}  // namespace

std::string report_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os << "quantity,m,n,H,count,fitted_slope,theory_exponent,gap\n";
  const std::string slope = report.fit ? fmt_double(report.fit->slope) : "";
  const std::string theory = report.theory.str();
  const std::string gap =
      report.fit ? fmt_double(report.fit->slope - report.theory.to_double()) : "";
  for (const ReportRow& row : report.rows) {
    os << quantity_name(row.quantity) << "," << row.m << "," << row.n << "," << row.H << ",";
    if (row.count) os << to_string(*row.count);
    os << "," << slope << "," << theory << "," << gap << "\n";
  }
  return os.str();
}

std::string report_plot_data(const ExperimentReport& report) {
  std::ostringstream os;
  if (!report.rows.empty())
    os << "# " << quantity_name(report.rows.front().quantity) << " m=" << report.rows.front().m
       << " n=" << report.rows.front().n << "\n";
  os << "# H count\n";
  for (const ReportRow& row : report.rows) {
    if (!row.count) continue;
    os << row.H << " " << to_string(*row.count) << "\n";
  }
  return os.str();
}

}  // namespace mcensus
