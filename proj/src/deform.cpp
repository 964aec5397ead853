#include "stfem/deform.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stfem/rootfind.hpp"

namespace stfem {

SlabDeformation::SlabDeformation(const LevelSetSlab& ls) : ls_(&ls) {
  disp_.assign(ls.n_temporal(), std::vector<double>(ls.space().n_dofs(), 0.0));
  deformed_.assign(ls.mesh().n_elements, 0);
}

double SlabDeformation::eval(double x, double t) const {
  return eval_elem(ls_->mesh().locate(x), x, t);
}

double SlabDeformation::eval_elem(int e, double x, double t) const {
  if (!deformed_[e]) return x;
  double d = 0.0;
  for (int i = 0; i < n_temporal(); ++i)
    d += ls_->lt(i, t) * space().eval_elem(e, disp_[i], x);
  return x + d;
}

void SlabDeformation::jacobian_elem(int e, double x, double t, double& dx, double& dt) const {
  dx = 1.0;
  dt = 0.0;
  if (!deformed_[e]) return;
  for (int i = 0; i < n_temporal(); ++i) {
    dx += ls_->lt(i, t) * space().eval_elem_deriv(e, disp_[i], x);
    dt += ls_->lt_deriv(i, t) * space().eval_elem(e, disp_[i], x);
  }
}

void SlabDeformation::jacobian(double x, double t, double& dx, double& dt) const {
  jacobian_elem(ls_->mesh().locate(x), x, t, dx, dt);
}

double SlabDeformation::invert_at_time(double y, double t) const {
  return invert_elem(ls_->mesh().locate(y), y, t);
}

double SlabDeformation::invert_elem(int e, double y, double t) const {
  if (!deformed_[e]) return y;
  const double h = ls_->mesh().h;
  auto f = [&](double x) { return eval_elem(e, x, t) - y; };
  auto df = [&](double x) {
    double dx, dt_;
    jacobian_elem(e, x, t, dx, dt_);
    return dx;
  };
  try {
    return newton_bisect(f, df, y - h, y + h, y, 1e-13);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("deformation inversion failed at y=" + std::to_string(y) +
                             ", t=" + std::to_string(t));
  }
}

std::vector<double> build_coefficient_map(const LevelSetSlab& ls, int temporal_index,
                                          const std::vector<int>& active) {
  const SpatialSpace& space = ls.space();
  const BackgroundMesh& mesh = ls.mesh();
  const double h = mesh.h;
  const std::vector<double>& c = ls.coeff(temporal_index);
  std::vector<double> disp(space.n_dofs(), 0.0);
  for (int e : active) {
    const double pl = c[mesh.elements[e][0]];
    const double pr = c[mesh.elements[e][1]];
    for (int j = 1; j < space.degree(); ++j) {
      const double xj = space.node_coord(e, j);
      const double lam = space.ref_basis().nodes()[j];
      const double target = (1.0 - lam) * pl + lam * pr;  // phi_lin at the node
      auto f = [&](double y) { return space.eval_elem(e, c, y) - target; };
      auto df = [&](double y) { return space.eval_elem_deriv(e, c, y); };
      double y;
      try {
        y = newton_bisect(f, df, xj - h, xj + h, xj, 1e-14);
      } catch (const std::runtime_error& err) {
        throw std::runtime_error("coefficient map root search failed on element " +
                                 std::to_string(e) + ", node " + std::to_string(j) + ": " +
                                 err.what());
      }
      const double d = y - xj;
      if (std::abs(d) > h)
        throw std::runtime_error("coefficient map displacement exceeds h on element " +
                                 std::to_string(e) + " (under-resolved geometry)");
      disp[space.dof(e, j)] = d;
    }
  }
  return disp;
}

SlabDeformation build_slab_deformation(const LevelSetSlab& ls, const ActiveRegions& regions) {
  SlabDeformation def(ls);
  for (int i = 0; i < ls.n_temporal(); ++i)
    def.disp(i) = build_coefficient_map(ls, i, regions.elems_cut_slab);
  // Elements with an exactly linear level set keep the identity map.
  for (int e : regions.elems_cut_slab) {
    bool nonzero = false;
    for (int i = 0; i < ls.n_temporal() && !nonzero; ++i)
      for (int j = 1; j < ls.space().degree() && !nonzero; ++j)
        if (def.disp(i)[ls.space().dof(e, j)] != 0.0) nonzero = true;
    if (nonzero) def.mark_deformed(e);
  }
  return def;
}

double ElementwiseField::eval_elem(const SpatialSpace& space, int e, double x) const {
  const double tau = (x - space.mesh().elem_lo(e)) / space.mesh().h;
  double v = 0.0;
  for (int j = 0; j <= degree; ++j) v += vals[e][j] * space.shape(j, tau);
  return v;
}

ElementwiseField transfer_elementwise(const SpatialSpace& uspace,
                                      const std::vector<double>& u_minus,
                                      const SlabDeformation& def_minus,
                                      const SlabDeformation& def_plus,
                                      const std::vector<int>& valid_elems) {
  const BackgroundMesh& mesh = uspace.mesh();
  const double t_join = def_minus.levelset().t1();
  ElementwiseField out;
  out.degree = uspace.degree();
  out.vals.assign(mesh.n_elements, std::vector<double>(uspace.degree() + 1, 0.0));
  for (int e : valid_elems) {
    for (int j = 0; j <= uspace.degree(); ++j) {
      const double xj = uspace.node_coord(e, j);
      const double y = def_plus.eval_elem(e, xj, t_join);
      const double xhat = def_minus.invert_elem(e, y, t_join);
      out.vals[e][j] = uspace.eval_elem(e, u_minus, xhat);
    }
  }
  return out;
}

std::vector<double> transfer_continuous(const SpatialSpace& uspace,
                                        const std::vector<double>& u_minus,
                                        const SlabDeformation& def_minus,
                                        const SlabDeformation& def_plus,
                                        const std::vector<int>& valid_elems) {
  const ElementwiseField ew =
      transfer_elementwise(uspace, u_minus, def_minus, def_plus, valid_elems);
  const BackgroundMesh& mesh = uspace.mesh();
  std::vector<double> out(uspace.n_dofs(), 0.0);
  std::vector<int> mult(uspace.n_dofs(), 0);
  for (int e : valid_elems) {
    for (int j = 0; j <= uspace.degree(); ++j) {
      const int dof = uspace.dof(e, j);
      out[dof] += ew.vals[e][j];
      mult[dof] += 1;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i)
    if (mult[i] > 1) out[i] /= mult[i];
  return out;
}

}  // namespace stfem
