#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mcensus/census.hpp"
#include "mcensus/exponent.hpp"

namespace mcensus {

struct ExperimentConfig {
  Quantity quantity = Quantity::Box;
  int n = 2;
  int m = 2;
  int k = 1;                      // RankK
  Variant variant = Variant::All;
  std::vector<long long> grid;    // H values, strictly increasing
  std::optional<Mat> c;           // T_m quantities; defaults to I_n
  int workers = 0;
};

struct ReportRow {
  Quantity quantity;
  int m, n;
  long long H;
  std::optional<uint128> count;  // empty when the guard tripped at this H
  std::string error;             // guard message for skipped rows
};

struct ExperimentReport {
  std::vector<ReportRow> rows;       // ordered by H ascending
  std::optional<FitResult> fit;      // over the measured rows, if >= 3
  Rat theory = Rat(0);
};

// Measures the configured quantity at every grid point (guard failures are
// recorded per row, not fatal) and fits a log-log slope over what measured.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

// Header exactly: quantity,m,n,H,count,fitted_slope,theory_exponent,gap
std::string report_csv(const ExperimentReport& report);

// gnuplot-friendly: comment header, then "H count" lines
std::string report_plot_data(const ExperimentReport& report);

}  // namespace mcensus
