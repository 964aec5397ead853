#pragma once

#include <cstddef>
#include <vector>

namespace stfem {

// Quadrature and nodal utilities on the reference interval [0,1].

struct QuadRule1D {
  std::vector<double> points;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [0,1] that integrates polynomials up to the given
// degree exactly (n = floor(degree/2)+1 points).
QuadRule1D gauss_rule(int exactness_degree);

// Gauss-Lobatto points of order k on [0,1] (k+1 points, both endpoints
// included). For k = 0 the single point is 1.
std::vector<double> gauss_lobatto_points(int order);

// Lagrange basis on a fixed set of distinct nodes in [0,1].
class LagrangeBasis1D {
public:
  LagrangeBasis1D() = default;
  explicit LagrangeBasis1D(std::vector<double> nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  int order() const { return size() - 1; }
  const std::vector<double>& nodes() const { return nodes_; }

  double eval(int i, double x) const;
  double eval_deriv(int i, double x) const;

  // Monomial coefficients of basis function i (c_0 + c_1 x + ...).
  std::vector<double> monomial_coeffs(int i) const;

private:
  std::vector<double> nodes_;
  std::vector<double> inv_denom_;  // 1 / prod_{j != i} (x_i - x_j)
};

// Polynomials in monomial form, lowest degree first.
double poly_eval(const std::vector<double>& c, double x);
std::vector<double> poly_derive(const std::vector<double>& c);

}  // namespace stfem
