#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mcensus/rational.hpp"

namespace mcensus {

// Quantities with a stated growth exponent in H.
enum class Quantity {
  Box,                 // (2H+1)^(n^2), exponent n^2
  DetZero,             // singular count, exponent n^2-n with a log factor
  RankK,               // rank-k count, exponent n*k (1 <= k < n)
  TmNonsingularC,      // #T_m(box, C), C nonsingular: (m-1)(n^2-n)
  TmSingularCm2,       // C != 0 singular, m=2: n^2
  TmSingularCm3plus,   // C != 0 singular, m>=3: m n^2 - n
  TmZeroC,             // C = 0: (m-1) n^2 (lower and upper)
  PairsNonsingular,    // (2m-1) n^2 - (m-1) n
  PairsAllM2,          // 3 n^2 - n
  PairsAllM3plus,      // 4 m n^2 - 2 n
  WLower,              // n^2 + m n - n (lower bound)
};

std::string quantity_name(Quantity q);
Quantity quantity_from_name(const std::string& name);
std::vector<Quantity> all_quantities();

enum class LogCorrection { None, Log, Kou };

struct ReferenceBound {
  Quantity quantity = Quantity::Box;
  int m = 2;
  int n = 2;
  int k = 1;  // RankK only
};

// The exponent as an exact rational; throws DomainError on combinations the
// source statements do not cover (wrong m for an m-split quantity, k out of
// range, n too small).
Rat theoretical_exponent(const ReferenceBound& rb);

LogCorrection log_correction(Quantity q);

// True when the quantity's statement is an upper (resp. lower) bound in H.
bool is_upper_bound(Quantity q);
bool is_lower_bound(Quantity q);

// rho = (m+1)^(1/m), the scalar-table constant.
double rho_scalar_table(int m);
// rho = m^(1/(m-1)), the product-set bound variant.
double rho_product_bound(int m);

enum class RhoKind { ScalarTable, ProductBound };

double q_entropy(double u);  // Q(u) = u log u - u + 1

// H^m / ((log H)^(Q(1/log rho)) (loglog H)^(3/2)). Requires H >= 16, m >= 2.
double reference_density(int m, double H, RhoKind kind = RhoKind::ScalarTable);

struct FitResult {
  std::vector<std::pair<double, double>> points;  // (H, count)
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // max |log count - (intercept + slope log H)|
};

// OLS of log count on log H. Needs >= 3 points, H strictly increasing,
// counts > 0.
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace mcensus
