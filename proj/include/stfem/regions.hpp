#pragma once

#include <vector>

#include "stfem/levelset.hpp"

namespace stfem {

// Per-slab element classification and facet sets driving dof activation and
// ghost-penalty stabilization. Element sets are sorted element indices;
// facet sets are sorted interior-facet vertex indices.
struct ActiveRegions {
  int slab_index = 0;
  std::vector<int> elems_E;         // phi_lin < 0 somewhere on T x I_n
  std::vector<int> elems_I;         // phi_lin < 0 everywhere on T x I_n
  std::vector<int> elems_cut_slab;  // E \ I
  std::vector<int> elems_Eplus;     // meets {phi_lin(., t_n) < delta}
  std::vector<int> elems_S;         // meets the strip |phi_lin(., t_n)| <= delta
  std::vector<int> facets_R;
  std::vector<int> facets_Rext;
  std::vector<int> facets_Rplus;
  double delta = 0.0;

  static bool contains(const std::vector<int>& set, int e);
};

// Sign-tie tolerance: vertex values within 1e-14 * (domain width) of zero are
// treated as negative, making grazing contacts deterministic.
double tie_eps(const BackgroundMesh& mesh);

void classify_elements(const LevelSetSlab& ls, ActiveRegions& regions);

// delta = eps_f * dt * w_inf; strip and extension evaluated from phi_lin at
// the slab end time t_n only.
void extended_region(const LevelSetSlab& ls, double eps_f, double w_inf,
                     ActiveRegions& regions);

void facet_sets(const BackgroundMesh& mesh, ActiveRegions& regions);

// Convenience: all of the above.
ActiveRegions build_regions(const LevelSetSlab& ls, double eps_f, double w_inf);

// True iff every element of the next slab's extended set E is contained in
// this slab's E^+.
bool check_extension_constraint(const ActiveRegions& regions_n,
                                const std::vector<int>& elems_E_next);

// Min and max of the vertex trajectory polynomial over the slab (endpoints
// plus critical points of the derivative).
void vertex_trajectory_range(const LevelSetSlab& ls, int v, double& lo, double& hi);

}  // namespace stfem
