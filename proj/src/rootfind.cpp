#include "stfem/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stfem/fem.hpp"

namespace stfem {

double newton_bisect(const std::function<double(double)>& f,
                     const std::function<double(double)>& df, double a, double b,
                     double x0, double tol, int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if (fa * fb > 0.0) throw std::runtime_error("newton_bisect: no sign change on bracket");
  double x = std::clamp(x0, a, b);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (std::abs(fx) == 0.0) return x;
    if (fx * fa < 0.0)
      b = x;
    else {
      a = x;
      fa = fx;
    }
    const double d = df(x);
    double xn = (d != 0.0) ? x - fx / d : a;
    if (!(xn > a && xn < b)) xn = 0.5 * (a + b);
    if (std::abs(xn - x) < tol) return xn;
    x = xn;
  }
  if (b - a < 1e3 * tol) return 0.5 * (a + b);
  throw std::runtime_error("newton_bisect: no convergence");
}

namespace {

int poly_degree(const std::vector<double>& c) {
  int deg = 0;
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return -1;  // zero polynomial
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(c[k]) > 1e-14 * scale) deg = static_cast<int>(k);
  return deg;
}

void push_root(std::vector<double>& roots, double r, double merge_tol) {
  if (r < -merge_tol || r > 1.0 + merge_tol) return;
  r = std::clamp(r, 0.0, 1.0);
  for (double s : roots)
    if (std::abs(s - r) <= merge_tol) return;
  roots.push_back(r);
}

void roots_rec(const std::vector<double>& c, double tol, double merge_tol,
               std::vector<double>& out) {
  const int deg = poly_degree(c);
  if (deg <= 0) return;  // constants (incl. identically zero): no isolated roots
  if (deg == 1) {
    push_root(out, -c[0] / c[1], merge_tol);
    return;
  }
  if (deg == 2) {
    const double a = c[2], b = c[1], cc = c[0];
    const double disc = b * b - 4.0 * a * cc;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    // Citardauq form avoids cancellation.
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    if (q != 0.0) push_root(out, cc / q, merge_tol);
    push_root(out, (a != 0.0) ? q / a : 0.0, merge_tol);
    return;
  }
  // Tangential roots sit among the derivative's roots.
  const std::vector<double> dc = poly_derive(c);
  std::vector<double> crit;
  roots_rec(dc, tol, merge_tol, crit);
  double scale = 0.0;
  for (double v : c) scale = std::max(scale, std::abs(v));
  for (double r : crit)
    if (std::abs(poly_eval(c, r)) <= 1e-11 * scale) push_root(out, r, merge_tol);

  // Sign-change bracketing on Chebyshev samples.
  const int ns = 8 * deg;
  std::vector<double> s(ns + 1);
  for (int i = 0; i <= ns; ++i) s[i] = 0.5 * (1.0 - std::cos(M_PI * i / ns));
  auto f = [&](double x) { return poly_eval(c, x); };
  auto df = [&](double x) { return poly_eval(dc, x); };
  for (int i = 0; i < ns; ++i) {
    const double fa = f(s[i]);
    const double fb = f(s[i + 1]);
    if (fa == 0.0) push_root(out, s[i], merge_tol);
    if (fa * fb < 0.0)
      push_root(out, newton_bisect(f, df, s[i], s[i + 1], 0.5 * (s[i] + s[i + 1]), tol, 100),
                merge_tol);
  }
  if (f(1.0) == 0.0) push_root(out, 1.0, merge_tol);
}

}  // namespace

std::vector<double> poly_roots_01(const std::vector<double>& coeffs, double tol,
                                  double merge_tol) {
  std::vector<double> roots;
  roots_rec(coeffs, tol, merge_tol, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace stfem
