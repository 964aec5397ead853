#include "stfem/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stfem/rootfind.hpp"

namespace stfem {

double SpaceTimeQuadRule::sum_weights() const {
  double s = 0.0;
  for (const auto& p : points) s += p.w;
  return s;
}

std::vector<WeightedPoint> spatial_cut_rule(const LevelSetSlab& ls, int element, double t,
                                            int order, CutDomain domain) {
  const BackgroundMesh& mesh = ls.mesh();
  const double eps = tie_eps(mesh);
  const double xl = mesh.elem_lo(element);
  const double xr = mesh.elem_hi(element);
  double a = xl, b = xr;
  if (domain != CutDomain::Full) {
    const double pl = ls.philin_vertex(mesh.elements[element][0], t);
    const double pr = ls.philin_vertex(mesh.elements[element][1], t);
    const bool nl = pl <= eps;
    const bool nr = pr <= eps;
    const bool want_neg = (domain == CutDomain::Inside);
    if (nl == nr) {
      if (nl != want_neg) return {};
    } else {
      const double lam = std::clamp(pl / (pl - pr), 0.0, 1.0);
      const double xc = xl + lam * (xr - xl);
      if (nl == want_neg)
        b = xc;
      else
        a = xc;
    }
  }
  if (!(b > a)) return {};
  const QuadRule1D gauss = gauss_rule(order);
  std::vector<WeightedPoint> rule(gauss.points.size());
  for (std::size_t q = 0; q < gauss.points.size(); ++q)
    rule[q] = {a + (b - a) * gauss.points[q], (b - a) * gauss.weights[q]};
  return rule;
}

std::vector<double> time_breakpoints(const LevelSetSlab& ls, int element) {
  const BackgroundMesh& mesh = ls.mesh();
  std::vector<double> taus = {0.0, 1.0};
  for (int v : {mesh.elements[element][0], mesh.elements[element][1]})
    for (double r : poly_roots_01(ls.vertex_trajectory(v))) taus.push_back(r);
  std::sort(taus.begin(), taus.end());
  std::vector<double> out;
  for (double tau : taus)
    if (out.empty() || tau - out.back() > 1e-12) out.push_back(tau);
  for (double& tau : out) tau = ls.t0() + ls.dt() * tau;
  // guard the exact endpoints against the affine round-off
  out.front() = ls.t0();
  out.back() = ls.t1();
  return out;
}

namespace {

SpaceTimeQuadRule tensor_rule(const LevelSetSlab& ls, int element,
                              const std::vector<double>& times, int temporal_exactness,
                              int spatial_exactness, CutDomain domain, bool keep_breakpoints) {
  SpaceTimeQuadRule rule;
  rule.element = element;
  rule.spatial_exactness = spatial_exactness;
  rule.temporal_exactness = temporal_exactness;
  if (keep_breakpoints) rule.breakpoints = times;
  const QuadRule1D tg = gauss_rule(temporal_exactness);
  for (std::size_t s = 0; s + 1 < times.size(); ++s) {
    const double ta = times[s];
    const double tb = times[s + 1];
    if (!(tb > ta)) continue;
    for (std::size_t q = 0; q < tg.points.size(); ++q) {
      const double t = ta + (tb - ta) * tg.points[q];
      const double wt = (tb - ta) * tg.weights[q];
      for (const WeightedPoint& sp : spatial_cut_rule(ls, element, t, spatial_exactness, domain))
        rule.points.push_back({sp.x, t, sp.w * wt});
    }
  }
  return rule;
}

}  // namespace

SpaceTimeQuadRule st_rule_topology_preserving(const LevelSetSlab& ls, int element, int k_t,
                                              int spatial_exactness, CutDomain domain) {
  return tensor_rule(ls, element, time_breakpoints(ls, element), 2 * (k_t + 1),
                     spatial_exactness, domain, true);
}

SpaceTimeQuadRule st_rule_topology_insensitive(const LevelSetSlab& ls, int element, int k_t,
                                               int substeps, int order_factor,
                                               int spatial_exactness, CutDomain domain) {
  if (substeps < 1 || order_factor < 1)
    throw std::invalid_argument("st_rule_topology_insensitive: substeps, order_factor >= 1");
  std::vector<double> times(substeps + 1);
  for (int s = 0; s <= substeps; ++s) times[s] = ls.t0() + ls.dt() * s / substeps;
  return tensor_rule(ls, element, times, order_factor * 2 * (k_t + 1), spatial_exactness,
                     domain, false);
}

std::vector<WeightedPoint> fixed_time_cut_rule(const LevelSetSlab& ls,
                                               const SlabDeformation* def, int element,
                                               double t, int order, CutDomain domain) {
  std::vector<WeightedPoint> rule = spatial_cut_rule(ls, element, t, order, domain);
  if (def != nullptr) {
    for (WeightedPoint& p : rule) {
      double dx, dt;
      def->jacobian_elem(element, p.x, t, dx, dt);
      if (!(dx > 0.0))
        throw std::runtime_error("non-positive deformation Jacobian in fixed-time rule");
      p.w *= dx;
    }
  }
  return rule;
}

}  // namespace stfem
