#pragma once

#include <vector>

#include "stfem/deform.hpp"
#include "stfem/levelset.hpp"

namespace stfem {

enum class CutDomain { Inside, Outside, Full };

struct SpaceTimePoint {
  double x;
  double t;
  double w;
};

// Quadrature on Q^lin,n intersected with one space-time prism T x I_n, in
// undeformed coordinates. `breakpoints` holds the time subdivision that
// produced the rule (empty for the topology-insensitive variant).
struct SpaceTimeQuadRule {
  int element = -1;
  std::vector<SpaceTimePoint> points;
  std::vector<double> breakpoints;
  int spatial_exactness = 0;
  int temporal_exactness = 0;

  double sum_weights() const;
};

struct WeightedPoint {
  double x;
  double w;
};

// Rule of the requested polynomial exactness on {phi_lin(.,t) < 0} (or its
// complement, or the full element). phi_lin is linear on the element, so the
// cut is a subinterval.
std::vector<WeightedPoint> spatial_cut_rule(const LevelSetSlab& ls, int element, double t,
                                            int order, CutDomain domain = CutDomain::Inside);

// Time subdivision at cut-topology changes: t_{n-1}, t_n and all roots of the
// vertex trajectories phi_lin(v, .) inside the slab.
std::vector<double> time_breakpoints(const LevelSetSlab& ls, int element);

SpaceTimeQuadRule st_rule_topology_preserving(const LevelSetSlab& ls, int element, int k_t,
                                              int spatial_exactness,
                                              CutDomain domain = CutDomain::Inside);

// Plain Gaussian time rule of exactness order_factor * 2*(k_t+1) on each of
// `substeps` equal subintervals, ignoring topology changes.
SpaceTimeQuadRule st_rule_topology_insensitive(const LevelSetSlab& ls, int element, int k_t,
                                               int substeps, int order_factor,
                                               int spatial_exactness,
                                               CutDomain domain = CutDomain::Inside);

// Fixed-time rule on the deformed domain Omega^h(t) restricted to the
// element: reference points with weights including |dTheta/dx|. Passing
// def = nullptr gives the undeformed rule.
std::vector<WeightedPoint> fixed_time_cut_rule(const LevelSetSlab& ls,
                                               const SlabDeformation* def, int element,
                                               double t, int order,
                                               CutDomain domain = CutDomain::Inside);

}  // namespace stfem
