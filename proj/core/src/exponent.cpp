#include "mcensus/exponent.hpp"

#include <cmath>

namespace mcensus {

std::string quantity_name(Quantity q) {
  switch (q) {
    case Quantity::Box: return "box";
    case Quantity::DetZero: return "det_zero";
    case Quantity::RankK: return "rank_k";
    case Quantity::TmNonsingularC: return "T_m_nonsingular_C";
    case Quantity::TmSingularCm2: return "T_m_singular_C_m2";
    case Quantity::TmSingularCm3plus: return "T_m_singular_C_m3plus";
    case Quantity::TmZeroC: return "T_m_zero_C";
    case Quantity::PairsNonsingular: return "pairs_nonsingular";
    case Quantity::PairsAllM2: return "pairs_all_m2";
    case Quantity::PairsAllM3plus: return "pairs_all_m3plus";
    case Quantity::WLower: return "W_lower";
  }
  return "?";
}

std::vector<Quantity> all_quantities() {
  return {Quantity::Box,          Quantity::DetZero,
          Quantity::RankK,        Quantity::TmNonsingularC,
          Quantity::TmSingularCm2, Quantity::TmSingularCm3plus,
          Quantity::TmZeroC,      Quantity::PairsNonsingular,
          Quantity::PairsAllM2,   Quantity::PairsAllM3plus,
          Quantity::WLower};
}

Quantity quantity_from_name(const std::string& name) {
  for (Quantity q : all_quantities())
    if (quantity_name(q) == name) return q;
  throw DomainError("unknown quantity: " + name);
}

Rat theoretical_exponent(const ReferenceBound& rb) {
  const long m = rb.m, n = rb.n, k = rb.k;
  auto need = [&](bool cond, const char* what) {
    if (!cond) throw DomainError(std::string("unsupported combination for ") +
                                 quantity_name(rb.quantity) + ": " + what);
  };
  switch (rb.quantity) {
    case Quantity::Box:
      need(n >= 1, "n >= 1");
      return Rat(n * n);
    case Quantity::DetZero:
      need(n >= 2, "n >= 2");
      return Rat(n * n - n);
    case Quantity::RankK:
      need(n >= 2 && k >= 1 && k < n, "1 <= k < n");
      return Rat(n * k);
    case Quantity::TmNonsingularC:
      need(m >= 1 && n >= 2, "m >= 1, n >= 2");
      return Rat((m - 1) * (n * n - n));
    case Quantity::TmSingularCm2:
      need(m == 2 && n >= 2, "m = 2, n >= 2");
      return Rat(n * n);
    case Quantity::TmSingularCm3plus:
      need(m >= 3 && n >= 2, "m >= 3, n >= 2");
      return Rat(m * n * n - n);
    case Quantity::TmZeroC:
      need(m >= 2 && n >= 2, "m >= 2, n >= 2");
      return Rat((m - 1) * n * n);
    case Quantity::PairsNonsingular:
      need(m >= 2 && n >= 2, "m >= 2, n >= 2");
      return Rat((2 * m - 1) * n * n - (m - 1) * n);
    case Quantity::PairsAllM2:
      need(m == 2 && n >= 2, "m = 2, n >= 2");
      return Rat(3 * n * n - n);
    case Quantity::PairsAllM3plus:
      need(m >= 3 && n >= 2, "m >= 3, n >= 2");
      return Rat(4 * m * n * n - 2 * n);
    case Quantity::WLower:
      need(m >= 2 && n >= 2, "m >= 2, n >= 2");
      return Rat(n * n + m * n - n);
  }
  throw DomainError("unknown quantity");
}

LogCorrection log_correction(Quantity q) {
  switch (q) {
    case Quantity::DetZero: return LogCorrection::Log;
    default: return LogCorrection::None;
  }
}

bool is_upper_bound(Quantity q) {
  switch (q) {
    case Quantity::Box:
    case Quantity::DetZero:
    case Quantity::RankK:
    case Quantity::TmZeroC:
      return true;  // these are exact orders, upper and lower
    case Quantity::TmNonsingularC:
    case Quantity::TmSingularCm2:
    case Quantity::TmSingularCm3plus:
    case Quantity::PairsNonsingular:
    case Quantity::PairsAllM2:
    case Quantity::PairsAllM3plus:
      return true;
    case Quantity::WLower:
      return false;
  }
  return false;
}

bool is_lower_bound(Quantity q) {
  switch (q) {
    case Quantity::Box:
    case Quantity::DetZero:
    case Quantity::RankK:
    case Quantity::TmZeroC:
    case Quantity::WLower:
      return true;
    default:
      return false;
  }
}

double rho_scalar_table(int m) {
  if (m < 2) throw DomainError("rho requires m >= 2");
  return std::pow(static_cast<double>(m) + 1.0, 1.0 / m);
}

double rho_product_bound(int m) {
  if (m < 2) throw DomainError("rho requires m >= 2");
  return std::pow(static_cast<double>(m), 1.0 / (m - 1));
}

double q_entropy(double u) {
  if (u <= 0) throw DomainError("Q(u) requires u > 0");
  return u * std::log(u) - u + 1.0;
}

double reference_density(int m, double H, RhoKind kind) {
  if (m < 2) throw DomainError("reference density requires m >= 2");
  if (H < 16) throw DomainError("reference density requires H >= 16");
  const double rho = kind == RhoKind::ScalarTable ? rho_scalar_table(m) : rho_product_bound(m);
  const double lg = std::log(H);
  const double llg = std::log(lg);
  return std::pow(H, m) / (std::pow(lg, q_entropy(1.0 / std::log(rho))) * std::pow(llg, 1.5));
}

FitResult fit_loglog(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("fit needs at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].second <= 0) throw DomainError("fit needs positive counts");
    if (i > 0 && points[i].first <= points[i - 1].first)
      throw DomainError("fit needs strictly increasing H");
  }
  const std::size_t n = points.size();
  double sx = 0, sy = 0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(points[i].first);
    ys[i] = std::log(points[i].second);
    sx += xs[i];
    sy += ys[i];
  }
  const double xb = sx / static_cast<double>(n), yb = sy / static_cast<double>(n);
  double num = 0, den = 0;
  for (std::size_t i = 0; i < n; ++i) {
    num += (xs[i] - xb) * (ys[i] - yb);
    den += (xs[i] - xb) * (xs[i] - xb);
  }
  if (den == 0) throw DomainError("degenerate fit: all H equal");
  FitResult r;
  r.points = points;
  r.slope = num / den;
  r.intercept = yb - r.slope * xb;
  r.residual = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = std::abs(ys[i] - (r.intercept + r.slope * xs[i]));
    if (res > r.residual) r.residual = res;
  }
  return r;
}

}  // namespace mcensus
