#include "stfem/fem.hpp"

#include <cmath>
#include <stdexcept>

namespace stfem {

namespace {

// Legendre polynomial P_n and derivative at x in [-1,1].
void legendre(int n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

QuadRule1D gauss_rule(int exactness_degree) {
  if (exactness_degree < 0) exactness_degree = 0;
  const int n = exactness_degree / 2 + 1;
  QuadRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev guess.
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p, dp;
    for (int it = 0; it < 100; ++it) {
      legendre(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre(n, x, p, dp);
    rule.points[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<double> gauss_lobatto_points(int order) {
  if (order < 0) throw std::invalid_argument("gauss_lobatto_points: order < 0");
  if (order == 0) return {1.0};
  const int n = order + 1;
  std::vector<double> pts(n);
  pts[0] = 0.0;
  pts[n - 1] = 1.0;
  // Interior points are roots of P'_{n-1}; Newton on dp with Chebyshev guesses.
  for (int i = 1; i < n - 1; ++i) {
    double x = std::cos(M_PI * i / (n - 1.0));
    for (int it = 0; it < 100; ++it) {
      double p, dp;
      legendre(n - 1, x, p, dp);
      // d/dx P'_{n-1} from the Legendre ODE: (1-x^2) P'' = 2x P' - n(n-1) P
      const double ddp = (2.0 * x * dp - (n - 1.0) * n * p) / (1.0 - x * x);
      const double dx = dp / ddp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    pts[n - 1 - i] = 0.5 * (1.0 + x);
  }
  return pts;
}

LagrangeBasis1D::LagrangeBasis1D(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  const int n = size();
  inv_denom_.assign(n, 1.0);
  for (int i = 0; i < n; ++i) {
    double d = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) d *= nodes_[i] - nodes_[j];
    inv_denom_[i] = 1.0 / d;
  }
}

double LagrangeBasis1D::eval(int i, double x) const {
  double v = inv_denom_[i];
  for (int j = 0; j < size(); ++j)
    if (j != i) v *= x - nodes_[j];
  return v;
}

double LagrangeBasis1D::eval_deriv(int i, double x) const {
  const int n = size();
  double sum = 0.0;
  for (int k = 0; k < n; ++k) {
    if (k == i) continue;
    double prod = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i && j != k) prod *= x - nodes_[j];
    sum += prod;
  }
  return sum * inv_denom_[i];
}

std::vector<double> LagrangeBasis1D::monomial_coeffs(int i) const {
  std::vector<double> c = {inv_denom_[i]};
  for (int j = 0; j < size(); ++j) {
    if (j == i) continue;
    // multiply by (x - nodes_[j])
    std::vector<double> nc(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      nc[k + 1] += c[k];
      nc[k] -= c[k] * nodes_[j];
    }
    c = std::move(nc);
  }
  return c;
}

double poly_eval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
  return v;
}

std::vector<double> poly_derive(const std::vector<double>& c) {
  if (c.size() <= 1) return {0.0};
  std::vector<double> d(c.size() - 1);
  for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = k * c[k];
  return d;
}

}  // namespace stfem
