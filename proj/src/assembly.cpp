#include "stfem/assembly.hpp"

#include <cmath>
#include <string>

namespace stfem {

SystemAccumulator::SystemAccumulator(const AssemblyInput& in) : in_(&in) {
  const int n = in.space->n_unknowns();
  matrix_ = Eigen::MatrixXd::Zero(n, n);
  rhs_ = Eigen::VectorXd::Zero(n);
  touched_.assign(static_cast<std::size_t>(n) * n, 0);
}

void SystemAccumulator::add(int row, int sdof, int layer, double value, bool acts_on_full_u) {
  const SlabSpace& space = *in_->space;
  const int col = space.unknown_index(sdof, layer);
  if (col >= 0) {
    matrix_(row, col) += value;
    touched_[static_cast<std::size_t>(row) * space.n_unknowns() + col] = 1;
    return;
  }
  if (!acts_on_full_u) return;
  if (space.trial_state(sdof, layer) == DofState::Constrained)
    rhs_(row) -= value * in_->init->constrained_layers[layer][sdof];
}

SlabSystem SystemAccumulator::finish() const {
  SlabSystem sys;
  sys.matrix = matrix_;
  sys.rhs = rhs_;
  sys.method = in_->space->method();
  sys.nze = 0;
  for (char t : touched_) sys.nze += t;
  return sys;
}

namespace {

// Cached basis data at one space-time quadrature point of one element.
struct PointBasis {
  double jx = 1.0, jt = 0.0;
  std::vector<double> psi, dpsi;      // spatial shape values / physical derivs
  std::vector<double> pu, dpu;        // trial temporal values / time derivs
  std::vector<double> pv;             // test temporal values

  void compute(const AssemblyInput& in, int e, double x, double t) {
    const SlabSpace& sp = *in.space;
    const SpatialSpace& ss = sp.space();
    const BackgroundMesh& mesh = ss.mesh();
    in.def->jacobian_elem(e, x, t, jx, jt);
    if (!(jx > 0.0))
      throw std::runtime_error("non-positive deformation Jacobian during assembly");
    const double tau = (x - mesh.elem_lo(e)) / mesh.h;
    const int nl = ss.degree() + 1;
    psi.resize(nl);
    dpsi.resize(nl);
    for (int j = 0; j < nl; ++j) {
      psi[j] = ss.shape(j, tau);
      dpsi[j] = ss.shape_deriv(j, tau) / mesh.h / jx;
    }
    pu.resize(sp.n_trial_layers());
    dpu.resize(sp.n_trial_layers());
    for (int i = 0; i < sp.n_trial_layers(); ++i) {
      pu[i] = sp.trial_time().eval(i, t);
      dpu[i] = sp.trial_time().eval_deriv(i, t);
    }
    pv.resize(sp.n_test_layers());
    for (int m = 0; m < sp.n_test_layers(); ++m) pv[m] = sp.test_time().eval(m, t);
  }
};

const std::vector<int>& volume_elements(const AssemblyInput& in) {
  const Method m = in.space->method();
  return (m == Method::CGbox || m == Method::GCC) ? in.regions->elems_Eplus
                                                  : in.regions->elems_E;
}

SpaceTimeQuadRule element_rule(const AssemblyInput& in, int e) {
  if (in.rule_mode.topology_preserving)
    return st_rule_topology_preserving(*in.ls, e, in.space->k_t(), in.spat_order());
  return st_rule_topology_insensitive(*in.ls, e, in.space->k_t(), in.rule_mode.substeps,
                                      in.rule_mode.order_factor, in.spat_order());
}

}  // namespace

void assemble_volume(const AssemblyInput& in, SystemAccumulator& acc) {
  const SlabSpace& sp = *in.space;
  const SpatialSpace& ss = sp.space();
  const int nl = ss.degree() + 1;
  PointBasis pb;
  for (int e : volume_elements(in)) {
    const SpaceTimeQuadRule rule = element_rule(in, e);
    for (const SpaceTimePoint& q : rule.points) {
      pb.compute(in, e, q.x, q.t);
      const double wq = q.w * pb.jx;
      const double xphys = in.def->eval_elem(e, q.x, q.t);
      const double wconv = in.prob->w(xphys, q.t);
      const double fq = in.prob->f(xphys, q.t);
      for (int m = 0; m < sp.n_test_layers(); ++m) {
        for (int l = 0; l < nl; ++l) {
          const int row = sp.test_index(ss.dof(e, l), m);
          if (row < 0) continue;
          const double tv = pb.pv[m] * pb.psi[l];
          const double tdx = pb.pv[m] * pb.dpsi[l];
          acc.add_rhs(row, wq * fq * tv);
          for (int i = 0; i < sp.n_trial_layers(); ++i) {
            for (int j = 0; j < nl; ++j) {
              // physical derivatives: d_t includes the mesh-velocity term
              const double uv = pb.pu[i] * pb.psi[j];
              const double udx = pb.pu[i] * pb.dpsi[j];
              const double udt = pb.dpu[i] * pb.psi[j] - pb.jt * udx;
              const double val = wq * ((udt + wconv * udx) * tv + udx * tdx);
              acc.add(row, ss.dof(e, j), i, val, true);
            }
          }
        }
      }
    }
  }
}

void assemble_upwind(const AssemblyInput& in, SystemAccumulator& acc) {
  const SlabSpace& sp = *in.space;
  const SpatialSpace& ss = sp.space();
  const int nl = ss.degree() + 1;
  const double t0 = in.ls->t0();
  for (int e : in.regions->elems_E) {
    const std::vector<WeightedPoint> rule =
        fixed_time_cut_rule(*in.ls, in.def, e, t0, in.spat_order());
    for (const WeightedPoint& q : rule) {
      const double tau = (q.x - ss.mesh().elem_lo(e)) / ss.mesh().h;
      const double trace = in.init->upwind_trace.eval_elem(ss, e, q.x);
      for (int m = 0; m < sp.n_test_layers(); ++m) {
        const double qm = sp.test_time().eval(m, t0);
        if (qm == 0.0) continue;
        for (int l = 0; l < nl; ++l) {
          const int row = sp.test_index(ss.dof(e, l), m);
          if (row < 0) continue;
          const double tv = qm * ss.shape(l, tau);
          acc.add_rhs(row, q.w * trace * tv);
          for (int i = 0; i < sp.n_trial_layers(); ++i) {
            const double pi = sp.trial_time().eval(i, t0);
            if (pi == 0.0) continue;
            for (int j = 0; j < nl; ++j)
              acc.add(row, ss.dof(e, j), i, q.w * pi * ss.shape(j, tau) * tv, true);
          }
        }
      }
    }
  }
}

namespace {

// Volumetric jump over a facet patch at time t: for each quadrature point of
// each patch element, the jump coefficient of every spatial dof of the patch
// (own side minus the neighbour's polynomial pulled through the extended
// mapped coordinate).
struct PatchJump {
  std::vector<int> sdofs;        // union of patch spatial dofs
  std::vector<double> jump;      // per sdof
  double weight = 0.0;           // quadrature weight incl. Jacobian and 1/h^2

  void compute(const AssemblyInput& in, int e_own, int e_other, double x, double w,
               double t) {
    const SpatialSpace& ss = in.space->space();
    const BackgroundMesh& mesh = ss.mesh();
    const int nl = ss.degree() + 1;
    sdofs.clear();
    jump.clear();
    double jx, jt;
    in.def->jacobian_elem(e_own, x, t, jx, jt);
    if (!(jx > 0.0))
      throw std::runtime_error("non-positive deformation Jacobian on facet patch");
    weight = w * jx / (mesh.h * mesh.h);
    const double xphys = in.def->eval_elem(e_own, x, t);
    const double yhat = in.def->invert_elem(e_other, xphys, t);
    const double tau_own = (x - mesh.elem_lo(e_own)) / mesh.h;
    const double tau_oth = (yhat - mesh.elem_lo(e_other)) / mesh.h;
    auto push = [&](int dof, double v) {
      for (std::size_t k = 0; k < sdofs.size(); ++k)
        if (sdofs[k] == dof) {
          jump[k] += v;
          return;
        }
      sdofs.push_back(dof);
      jump.push_back(v);
    };
    for (int j = 0; j < nl; ++j) push(ss.dof(e_own, j), ss.shape(j, tau_own));
    for (int j = 0; j < nl; ++j) push(ss.dof(e_other, j), -ss.shape(j, tau_oth));
  }
};

}  // namespace

void assemble_ghost_penalty_time(const AssemblyInput& in, const std::vector<int>& facets,
                                 SystemAccumulator& acc) {
  const SlabSpace& sp = *in.space;
  const BackgroundMesh& mesh = sp.space().mesh();
  const double gamma = in.gamma_tilde();
  const QuadRule1D tg = gauss_rule(2 * (sp.k_t() + 1));
  const QuadRule1D sg = gauss_rule(in.spat_order());
  PatchJump pj;
  for (int fv : facets) {
    const auto patch = mesh.facet_patch(fv);
    for (int side = 0; side < 2; ++side) {
      const int e_own = patch[side];
      const int e_other = patch[1 - side];
      const double lo = mesh.elem_lo(e_own);
      for (std::size_t qt = 0; qt < tg.points.size(); ++qt) {
        const double t = in.ls->t0() + in.ls->dt() * tg.points[qt];
        const double wt = in.ls->dt() * tg.weights[qt];
        for (std::size_t qs = 0; qs < sg.points.size(); ++qs) {
          const double x = lo + mesh.h * sg.points[qs];
          pj.compute(in, e_own, e_other, x, mesh.h * sg.weights[qs] * wt, t);
          for (int m = 0; m < sp.n_test_layers(); ++m) {
            const double qm = sp.test_time().eval(m, t);
            for (std::size_t lv = 0; lv < pj.sdofs.size(); ++lv) {
              const int row = sp.test_index(pj.sdofs[lv], m);
              if (row < 0) continue;
              const double tv = qm * pj.jump[lv];
              for (int i = 0; i < sp.n_trial_layers(); ++i) {
                const double pi = sp.trial_time().eval(i, t);
                for (std::size_t lu = 0; lu < pj.sdofs.size(); ++lu)
                  acc.add(row, pj.sdofs[lu], i,
                          gamma * pj.weight * pi * pj.jump[lu] * tv, false);
              }
            }
          }
        }
      }
    }
  }
}

void assemble_ghost_penalty_at(const AssemblyInput& in, const std::vector<int>& facets,
                               double t, bool colloc_rows, SystemAccumulator& acc) {
  const SlabSpace& sp = *in.space;
  const BackgroundMesh& mesh = sp.space().mesh();
  const QuadRule1D sg = gauss_rule(in.spat_order());
  PatchJump pj;
  for (int fv : facets) {
    const auto patch = mesh.facet_patch(fv);
    for (int side = 0; side < 2; ++side) {
      const int e_own = patch[side];
      const int e_other = patch[1 - side];
      const double lo = mesh.elem_lo(e_own);
      for (std::size_t qs = 0; qs < sg.points.size(); ++qs) {
        const double x = lo + mesh.h * sg.points[qs];
        pj.compute(in, e_own, e_other, x, mesh.h * sg.weights[qs], t);
        if (colloc_rows) {
          for (std::size_t lv = 0; lv < pj.sdofs.size(); ++lv) {
            const int row = sp.colloc_row(pj.sdofs[lv], 0);
            if (row < 0) continue;
            const double tv = pj.jump[lv];
            for (int i = 0; i < sp.n_trial_layers(); ++i) {
              const double pi = sp.trial_time().eval(i, t);
              if (pi == 0.0) continue;
              for (std::size_t lu = 0; lu < pj.sdofs.size(); ++lu)
                acc.add(row, pj.sdofs[lu], i,
                        in.gamma_J * pj.weight * pi * pj.jump[lu] * tv, false);
            }
          }
        } else {
          for (int m = 0; m < sp.n_test_layers(); ++m) {
            const double qm = sp.test_time().eval(m, t);
            if (qm == 0.0) continue;
            for (std::size_t lv = 0; lv < pj.sdofs.size(); ++lv) {
              const int row = sp.test_index(pj.sdofs[lv], m);
              if (row < 0) continue;
              const double tv = qm * pj.jump[lv];
              for (int i = 0; i < sp.n_trial_layers(); ++i) {
                const double pi = sp.trial_time().eval(i, t);
                if (pi == 0.0) continue;
                for (std::size_t lu = 0; lu < pj.sdofs.size(); ++lu)
                  acc.add(row, pj.sdofs[lu], i,
                          in.gamma_J * pj.weight * pi * pj.jump[lu] * tv, false);
              }
            }
          }
        }
      }
    }
  }
}

void assemble_collocation(const AssemblyInput& in, double t_l, SystemAccumulator& acc) {
  const SlabSpace& sp = *in.space;
  const SpatialSpace& ss = sp.space();
  const int nl = ss.degree() + 1;
  PointBasis pb;
  for (int e : in.regions->elems_Eplus) {
    const std::vector<WeightedPoint> rule =
        fixed_time_cut_rule(*in.ls, in.def, e, t_l, in.spat_order());
    for (const WeightedPoint& q : rule) {
      pb.compute(in, e, q.x, t_l);
      const double xphys = in.def->eval_elem(e, q.x, t_l);
      const double wconv = in.prob->w(xphys, t_l);
      const double fq = in.prob->f(xphys, t_l);
      for (int l = 0; l < nl; ++l) {
        const int row = sp.colloc_row(ss.dof(e, l), 0);
        if (row < 0) continue;
        const double tv = pb.psi[l];
        const double tdx = pb.dpsi[l];
        acc.add_rhs(row, q.w * fq * tv);
        for (int i = 0; i < sp.n_trial_layers(); ++i) {
          for (int j = 0; j < nl; ++j) {
            const double udx = pb.pu[i] * pb.dpsi[j];
            const double udt = pb.dpu[i] * pb.psi[j] - pb.jt * udx;
            acc.add(row, ss.dof(e, j), i,
                    q.w * ((udt + wconv * udx) * tv + udx * tdx), true);
          }
        }
      }
    }
  }
}

SlabSystem assemble_slab(const AssemblyInput& in) {
  SystemAccumulator acc(in);
  assemble_volume(in, acc);
  switch (in.space->method()) {
    case Method::DG:
      assemble_upwind(in, acc);
      assemble_ghost_penalty_time(in, in.regions->facets_Rext, acc);
      break;
    case Method::CG:
      assemble_ghost_penalty_time(in, in.regions->facets_Rext, acc);
      assemble_ghost_penalty_at(in, in.regions->facets_Rplus, in.ls->t1(), false, acc);
      break;
    case Method::CGbox:
      assemble_ghost_penalty_time(in, in.regions->facets_Rplus, acc);
      break;
    case Method::GCC:
      assemble_ghost_penalty_time(in, in.regions->facets_Rplus, acc);
      assemble_collocation(in, in.ls->t1(), acc);
      assemble_ghost_penalty_at(in, in.regions->facets_Rplus, in.ls->t1(), true, acc);
      break;
  }
  return acc.finish();
}

SlabSolution solve_slab(const AssemblyInput& in, const SlabSystem& sys) {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.matrix);
  const double norm_inf = sys.matrix.cwiseAbs().rowwise().sum().maxCoeff();
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot >= 1e-13 * norm_inf))
    throw SolverError("singular slab system (pivot " + std::to_string(min_pivot) +
                      " vs scale " + std::to_string(norm_inf) +
                      "); consider a larger gamma_J (current gamma_J = " +
                      std::to_string(in.gamma_J) + ")");
  const Eigen::VectorXd x = lu.solve(sys.rhs);

  const SlabSpace& sp = *in.space;
  SlabSolution sol;
  sol.layers.assign(sp.n_trial_layers(),
                    std::vector<double>(sp.space().n_dofs(), 0.0));
  for (int i = 0; i < sp.n_trial_layers(); ++i)
    for (int j = 0; j < sp.space().n_dofs(); ++j) {
      const int col = sp.unknown_index(j, i);
      if (col >= 0)
        sol.layers[i][j] = x(col);
      else if (sp.trial_state(j, i) == DofState::Constrained)
        sol.layers[i][j] = in.init->constrained_layers[i][j];
    }
  return sol;
}

}  // namespace stfem
