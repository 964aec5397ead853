#pragma once

#include <functional>
#include <vector>

namespace stfem {

// Safeguarded Newton iteration on [a,b]: Newton steps with bisection fallback
// whenever the iterate leaves the bracket or fails to reduce |f|. Requires a
// sign change of f on [a,b]. Throws std::runtime_error on non-convergence.
double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double a, double b,
                     double x0, double tol, int max_iter = 50);

// All real roots in [0,1] of a polynomial in monomial form. Closed form for
// degree <= 2; otherwise sign-change bracketing on 8*deg Chebyshev sample
// points with bisection/Newton refinement to `tol`, plus recursion into the
// derivative to pick up tangential (even-multiplicity) roots. Roots closer
// than `merge_tol` are merged.
std::vector<double> poly_roots_01(const std::vector<double>& coeffs, double tol = 1e-13,
                                  double merge_tol = 1e-12);

}  // namespace stfem
