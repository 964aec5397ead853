#pragma once

#include <vector>

#include "stfem/levelset.hpp"
#include "stfem/regions.hpp"

namespace stfem {

// Per-slab isoparametric mapping Theta(x,t) = x + sum_i l_i(t) disp_i(x) with
// spatial displacement functions of degree q_s that vanish outside the
// slab-wide cut band and at all mesh vertices. In 1D each element maps onto
// itself, so element lookup works in both coordinates.
class SlabDeformation {
public:
  SlabDeformation() = default;
  explicit SlabDeformation(const LevelSetSlab& ls);

  const LevelSetSlab& levelset() const { return *ls_; }
  const SpatialSpace& space() const { return ls_->space(); }
  int n_temporal() const { return ls_->n_temporal(); }

  std::vector<double>& disp(int i) { return disp_[i]; }
  const std::vector<double>& disp(int i) const { return disp_[i]; }

  bool element_deformed(int e) const { return deformed_[e] != 0; }
  void mark_deformed(int e) { deformed_[e] = 1; }

  double eval(double x, double t) const;
  double eval_elem(int e, double x, double t) const;  // canonical extension
  // Spatial and temporal derivative of Theta at (x, t) on element e.
  void jacobian_elem(int e, double x, double t, double& dx, double& dt) const;
  void jacobian(double x, double t, double& dx, double& dt) const;
  // Solve Theta(x, t) = y for x within the element containing y.
  double invert_at_time(double y, double t) const;
  double invert_elem(int e, double y, double t) const;  // uses extension of element e

private:
  const LevelSetSlab* ls_ = nullptr;
  std::vector<std::vector<double>> disp_;
  std::vector<char> deformed_;
};

// Nodal construction of one coefficient map: for each interior Lagrange node
// x_j of each active element solve  phi_poly(x_j + d_j) = phi_lin(x_j)  by
// safeguarded Newton on the bracket [x_j - h, x_j + h]; d_j = 0 at vertices
// and outside the active set.
std::vector<double> build_coefficient_map(const LevelSetSlab& ls, int temporal_index,
                                          const std::vector<int>& active);

SlabDeformation build_slab_deformation(const LevelSetSlab& ls, const ActiveRegions& regions);

// Discontinuous per-element nodal representation used for element-local
// transfer between differently deformed meshes.
struct ElementwiseField {
  int degree = 0;
  std::vector<std::vector<double>> vals;  // [element][degree+1]

  double eval_elem(const SpatialSpace& space, int e, double x) const;
};

// Pi_u^*: element-local transfer of u_minus (coefficients on the mesh
// deformed by Theta^-(t_n)) onto the mesh deformed by Theta^+(t_n). Elements
// outside `valid_elems` produce zeros.
ElementwiseField transfer_elementwise(const SpatialSpace& uspace,
                                      const std::vector<double>& u_minus,
                                      const SlabDeformation& def_minus,
                                      const SlabDeformation& def_plus,
                                      const std::vector<int>& valid_elems);

// Pi_u = P_h o Pi_u^*: averages duplicated vertex values of the element-wise
// transfer to restore continuity.
std::vector<double> transfer_continuous(const SpatialSpace& uspace,
                                        const std::vector<double>& u_minus,
                                        const SlabDeformation& def_minus,
                                        const SlabDeformation& def_plus,
                                        const std::vector<int>& valid_elems);

}  // namespace stfem
