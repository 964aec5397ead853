#include "stfem/regions.hpp"

#include <algorithm>
#include <cmath>

#include "stfem/rootfind.hpp"

namespace stfem {

bool ActiveRegions::contains(const std::vector<int>& set, int e) {
  return std::binary_search(set.begin(), set.end(), e);
}

double tie_eps(const BackgroundMesh& mesh) {
  return 1e-14 * (mesh.domain_hi - mesh.domain_lo);
}

void vertex_trajectory_range(const LevelSetSlab& ls, int v, double& lo, double& hi) {
  const std::vector<double> c = ls.vertex_trajectory(v);
  lo = hi = poly_eval(c, 0.0);
  auto consider = [&](double tau) {
    const double val = poly_eval(c, tau);
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  };
  consider(1.0);
  for (double r : poly_roots_01(poly_derive(c))) consider(r);
}

namespace {

bool negative(double v, double eps) { return v <= eps; }

}  // namespace

void classify_elements(const LevelSetSlab& ls, ActiveRegions& regions) {
  const BackgroundMesh& mesh = ls.mesh();
  const double eps = tie_eps(mesh);
  regions.slab_index = ls.slab_index();
  regions.elems_E.clear();
  regions.elems_I.clear();
  regions.elems_cut_slab.clear();

  std::vector<double> vlo(mesh.vertices.size()), vhi(mesh.vertices.size());
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    vertex_trajectory_range(ls, static_cast<int>(v), vlo[v], vhi[v]);

  for (int e = 0; e < mesh.n_elements; ++e) {
    const int va = mesh.elements[e][0];
    const int vb = mesh.elements[e][1];
    // phi_lin is linear in x per element, so extrema over the prism sit on
    // the two vertex trajectories. A minimum that only grazes zero leaves the
    // element uncut (the intersection has measure zero); a grazing maximum
    // keeps it interior.
    const bool in_E = std::min(vlo[va], vlo[vb]) < -eps;
    const bool in_I = negative(std::max(vhi[va], vhi[vb]), eps);
    if (in_E) regions.elems_E.push_back(e);
    if (in_I) regions.elems_I.push_back(e);
    if (in_E && !in_I) regions.elems_cut_slab.push_back(e);
  }
}

void extended_region(const LevelSetSlab& ls, double eps_f, double w_inf,
                     ActiveRegions& regions) {
  const BackgroundMesh& mesh = ls.mesh();
  const double eps = tie_eps(mesh);
  const double delta = eps_f * ls.dt() * w_inf;
  regions.delta = delta;
  regions.elems_Eplus.clear();
  regions.elems_S.clear();
  for (int e = 0; e < mesh.n_elements; ++e) {
    const double pa = ls.philin_vertex(mesh.elements[e][0], ls.t1());
    const double pb = ls.philin_vertex(mesh.elements[e][1], ls.t1());
    const double lo = std::min(pa, pb);
    const double hi = std::max(pa, pb);
    if (negative(lo - delta, eps)) regions.elems_Eplus.push_back(e);
    // strip: element meets the closed band -delta <= phi_lin(., t_n) <= delta
    if (negative(lo - delta, eps) && !negative(hi + delta, -eps))
      regions.elems_S.push_back(e);
  }
}

void facet_sets(const BackgroundMesh& mesh, ActiveRegions& regions) {
  regions.facets_R.clear();
  regions.facets_Rext.clear();
  regions.facets_Rplus.clear();
  auto in = [&](const std::vector<int>& set, int e) {
    return e >= 0 && e < mesh.n_elements && ActiveRegions::contains(set, e);
  };
  for (int v : mesh.interior_facets) {
    const int a = v - 1, b = v;
    const bool a_cut = in(regions.elems_cut_slab, a);
    const bool b_cut = in(regions.elems_cut_slab, b);
    if ((a_cut && in(regions.elems_E, b)) || (b_cut && in(regions.elems_E, a)))
      regions.facets_R.push_back(v);
    const bool plus = (in(regions.elems_Eplus, a) && in(regions.elems_S, b)) ||
                      (in(regions.elems_Eplus, b) && in(regions.elems_S, a));
    if (plus) regions.facets_Rplus.push_back(v);
  }

  // F_R^ext: for each maximal chain of cut elements grow into the interior,
  // adding facets between I elements until the chain length is matched.
  regions.facets_Rext = regions.facets_R;
  auto add_facet = [&](int v) {
    if (!std::binary_search(regions.facets_Rext.begin(), regions.facets_Rext.end(), v)) {
      regions.facets_Rext.insert(
          std::upper_bound(regions.facets_Rext.begin(), regions.facets_Rext.end(), v), v);
      return true;
    }
    return false;
  };
  std::size_t c0 = 0;
  while (c0 < regions.elems_cut_slab.size()) {
    std::size_t c1 = c0;
    while (c1 + 1 < regions.elems_cut_slab.size() &&
           regions.elems_cut_slab[c1 + 1] == regions.elems_cut_slab[c1] + 1)
      ++c1;
    const int chain_len = static_cast<int>(c1 - c0 + 1);
    const int lo = regions.elems_cut_slab[c0];
    const int hi = regions.elems_cut_slab[c1];
    int added = 0;
    for (int d = 1; added < chain_len; ++d) {
      // candidate facets at distance d on either side, interior-interior only
      const int fl = lo - d;      // facet between elements lo-d-1 and lo-d
      const int fr = hi + 1 + d;  // facet between elements hi+d and hi+d+1
      bool any = false;
      if (in(regions.elems_I, fr - 1) && in(regions.elems_I, fr)) {
        if (add_facet(fr)) ++added;
        any = true;
      }
      if (added < chain_len && in(regions.elems_I, fl - 1) && in(regions.elems_I, fl)) {
        if (add_facet(fl)) ++added;
        any = true;
      }
      if (!any) break;
    }
    c0 = c1 + 1;
  }
}

ActiveRegions build_regions(const LevelSetSlab& ls, double eps_f, double w_inf) {
  ActiveRegions regions;
  classify_elements(ls, regions);
  extended_region(ls, eps_f, w_inf, regions);
  facet_sets(ls.mesh(), regions);
  return regions;
}

bool check_extension_constraint(const ActiveRegions& regions_n,
                                const std::vector<int>& elems_E_next) {
  for (int e : elems_E_next)
    if (!ActiveRegions::contains(regions_n.elems_Eplus, e)) return false;
  return true;
}

}  // namespace stfem
