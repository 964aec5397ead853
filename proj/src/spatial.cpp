#include "stfem/spatial.hpp"

#include <stdexcept>

namespace stfem {

SpatialSpace::SpatialSpace(const BackgroundMesh& mesh, int degree)
    : mesh_(&mesh), degree_(degree), basis_(gauss_lobatto_points(degree)) {
  if (degree < 1) throw std::invalid_argument("SpatialSpace: degree < 1");
  n_dofs_ = static_cast<int>(mesh.vertices.size()) + mesh.n_elements * (degree - 1);
}

int SpatialSpace::dof(int e, int j) const {
  if (j == 0) return mesh_->elements[e][0];
  if (j == degree_) return mesh_->elements[e][1];
  return static_cast<int>(mesh_->vertices.size()) + e * (degree_ - 1) + (j - 1);
}

double SpatialSpace::node_coord(int e, int j) const {
  return mesh_->elem_lo(e) + mesh_->h * basis_.nodes()[j];
}

double SpatialSpace::eval_elem(int e, const std::vector<double>& coeffs, double x) const {
  const double tau = (x - mesh_->elem_lo(e)) / mesh_->h;
  double v = 0.0;
  for (int j = 0; j <= degree_; ++j) v += coeffs[dof(e, j)] * basis_.eval(j, tau);
  return v;
}

double SpatialSpace::eval_elem_deriv(int e, const std::vector<double>& coeffs,
                                     double x) const {
  const double tau = (x - mesh_->elem_lo(e)) / mesh_->h;
  double v = 0.0;
  for (int j = 0; j <= degree_; ++j) v += coeffs[dof(e, j)] * basis_.eval_deriv(j, tau);
  return v / mesh_->h;
}

}  // namespace stfem
