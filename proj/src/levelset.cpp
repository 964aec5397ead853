#include "stfem/levelset.hpp"

#include <stdexcept>

namespace stfem {

LevelSetSlab::LevelSetSlab(const BackgroundMesh& mesh, int slab_index, double t0, double t1,
                           int q_s, int q_t)
    : space_(mesh, q_s),
      slab_index_(slab_index),
      t0_(t0),
      t1_(t1),
      q_s_(q_s),
      q_t_(q_t),
      tbasis_(q_t == 0 ? std::vector<double>{0.0} : gauss_lobatto_points(q_t)) {
  if (q_s < 1 || q_t < 0) throw std::invalid_argument("LevelSetSlab: q_s >= 1, q_t >= 0");
  coeff_.assign(q_t + 1, std::vector<double>(space_.n_dofs(), 0.0));
}

double LevelSetSlab::lt(int i, double t) const {
  return tbasis_.eval(i, (t - t0_) / (t1_ - t0_));
}

double LevelSetSlab::lt_deriv(int i, double t) const {
  return tbasis_.eval_deriv(i, (t - t0_) / (t1_ - t0_)) / (t1_ - t0_);
}

double LevelSetSlab::eval_phih(double x, double t) const {
  return eval_phih_elem(mesh().locate(x), x, t);
}

double LevelSetSlab::eval_phih_dx(double x, double t) const {
  return eval_phih_elem_dx(mesh().locate(x), x, t);
}

double LevelSetSlab::eval_phih_elem(int e, double x, double t) const {
  double v = 0.0;
  for (int i = 0; i <= q_t_; ++i) v += lt(i, t) * space_.eval_elem(e, coeff_[i], x);
  return v;
}

double LevelSetSlab::eval_phih_elem_dx(int e, double x, double t) const {
  double v = 0.0;
  for (int i = 0; i <= q_t_; ++i) v += lt(i, t) * space_.eval_elem_deriv(e, coeff_[i], x);
  return v;
}

double LevelSetSlab::eval_philin(double x, double t) const {
  const int e = mesh().locate(x);
  const double lam = (x - mesh().elem_lo(e)) / mesh().h;
  const int vl = mesh().elements[e][0];
  const int vr = mesh().elements[e][1];
  return (1.0 - lam) * philin_vertex(vl, t) + lam * philin_vertex(vr, t);
}

double LevelSetSlab::philin_vertex(int v, double t) const {
  double val = 0.0;
  for (int i = 0; i <= q_t_; ++i) val += lt(i, t) * coeff_[i][v];
  return val;
}

std::vector<double> LevelSetSlab::vertex_trajectory(int v) const {
  std::vector<double> c(q_t_ + 1, 0.0);
  for (int i = 0; i <= q_t_; ++i) {
    const std::vector<double> li = tbasis_.monomial_coeffs(i);
    for (std::size_t k = 0; k < li.size(); ++k) c[k] += coeff_[i][v] * li[k];
  }
  return c;
}

LevelSetSlab interpolate_levelset(const ProblemDefinition& prob, const BackgroundMesh& mesh,
                                  const TimeSlabbing& slabs, int n, int q_s, int q_t) {
  LevelSetSlab ls(mesh, n, slabs.t_lower(n), slabs.t_upper(n), q_s, q_t);
  // With l_i the Lagrange basis at the interpolation nodes, the coefficient
  // functions are the spatial interpolants at those nodes.
  for (int i = 0; i <= q_t; ++i) {
    const double ti = ls.temporal_node(i);
    std::vector<double>& c = ls.coeff(i);
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= q_s; ++j)
        c[ls.space().dof(e, j)] = prob.phi(ls.space().node_coord(e, j), ti);
  }
  return ls;
}

}  // namespace stfem
