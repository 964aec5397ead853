#pragma once

#include <vector>

#include "stfem/fem.hpp"
#include "stfem/mesh.hpp"

namespace stfem {

// Continuous Lagrange space of given degree on the background mesh, with
// Gauss-Lobatto nodes per element. Global numbering is over the full mesh
// (vertices first, then element-interior nodes) so that dof indices are
// stable across time slabs.
class SpatialSpace {
public:
  SpatialSpace() = default;
  SpatialSpace(const BackgroundMesh& mesh, int degree);

  const BackgroundMesh& mesh() const { return *mesh_; }
  int degree() const { return degree_; }
  int n_dofs() const { return n_dofs_; }
  int n_local() const { return degree_ + 1; }
  const LagrangeBasis1D& ref_basis() const { return basis_; }

  // Global dof of local node j (0..degree) on element e; local 0 and
  // `degree` are the element vertices.
  int dof(int e, int j) const;

  // Physical coordinate of local node j on element e.
  double node_coord(int e, int j) const;

  // Element polynomial evaluation from a global coefficient vector. `x` may
  // lie outside the element (canonical polynomial extension).
  double eval_elem(int e, const std::vector<double>& coeffs, double x) const;
  double eval_elem_deriv(int e, const std::vector<double>& coeffs, double x) const;

  // Reference-coordinate basis values at tau = (x - lo) / h.
  double shape(int j, double tau) const { return basis_.eval(j, tau); }
  double shape_deriv(int j, double tau) const { return basis_.eval_deriv(j, tau); }

private:
  const BackgroundMesh* mesh_ = nullptr;
  int degree_ = 0;
  int n_dofs_ = 0;
  LagrangeBasis1D basis_;
};

}  // namespace stfem
