#pragma once

#include <functional>
#include <string>
#include <vector>

#include "stfem/mesh.hpp"
#include "stfem/spatial.hpp"

namespace stfem {

using ScalarField = std::function<double(double, double)>;  // (x, t)

// Analytic description of one problem instance: level set, velocity, source,
// initial value and (for manufactured cases) the exact solution.
struct ProblemDefinition {
  std::string name;
  ScalarField phi;
  ScalarField w;
  ScalarField f;
  std::function<double(double)> u0;
  ScalarField u_exact;    // may be empty
  ScalarField u_t_exact;  // may be empty; needed to start GCC runs
  double w_inf = 0.0;     // L-infinity bound of w over the space-time domain
  double domain_lo = -1.0;
  double domain_hi = 1.0;
  double t_end = 0.5;

  bool has_exact() const { return static_cast<bool>(u_exact); }
};

// Per-slab discrete level set in tensor-product form,
//   phi_h(x,t) = sum_i l_i(t) phi_h^i(x),
// with l_i the Lagrange basis on Gauss-Lobatto points of order q_t on the
// slab and phi_h^i of degree q_s on the background mesh. phi^lin is the
// elementwise linear interpolant using vertex values only.
class LevelSetSlab {
public:
  LevelSetSlab() = default;
  LevelSetSlab(const BackgroundMesh& mesh, int slab_index, double t0, double t1, int q_s,
               int q_t);

  const BackgroundMesh& mesh() const { return space_.mesh(); }
  const SpatialSpace& space() const { return space_; }
  int slab_index() const { return slab_index_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double dt() const { return t1_ - t0_; }
  int q_s() const { return q_s_; }
  int q_t() const { return q_t_; }
  int n_temporal() const { return q_t_ + 1; }

  std::vector<double>& coeff(int i) { return coeff_[i]; }
  const std::vector<double>& coeff(int i) const { return coeff_[i]; }

  // Temporal basis value/derivative at physical time t in the slab.
  double lt(int i, double t) const;
  double lt_deriv(int i, double t) const;
  const LagrangeBasis1D& temporal_basis() const { return tbasis_; }
  double temporal_node(int i) const { return t0_ + (t1_ - t0_) * tbasis_.nodes()[i]; }

  double eval_phih(double x, double t) const;
  double eval_phih_dx(double x, double t) const;
  // Canonical polynomial extension of phi_h from element e (x may be outside e).
  double eval_phih_elem(int e, double x, double t) const;
  double eval_phih_elem_dx(int e, double x, double t) const;

  double eval_philin(double x, double t) const;
  // Vertex trajectory phi^lin(v, .) as a polynomial in the reference time
  // tau = (t - t0)/dt, monomial coefficients lowest-first.
  std::vector<double> vertex_trajectory(int v) const;
  double philin_vertex(int v, double t) const;

private:
  SpatialSpace space_;
  int slab_index_ = 0;
  double t0_ = 0.0, t1_ = 0.0;
  int q_s_ = 1, q_t_ = 0;
  LagrangeBasis1D tbasis_;
  std::vector<std::vector<double>> coeff_;  // [q_t+1][n_dofs]
};

// Tensor-product interpolation of prob.phi on slab n (1-based).
LevelSetSlab interpolate_levelset(const ProblemDefinition& prob, const BackgroundMesh& mesh,
                                  const TimeSlabbing& slabs, int n, int q_s, int q_t);

}  // namespace stfem
