#include "stfem/spaces.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stfem {

const char* method_name(Method m) {
  switch (m) {
    case Method::DG: return "dg";
    case Method::CG: return "cg";
    case Method::CGbox: return "cgbox";
    case Method::GCC: return "gcc";
  }
  return "?";
}

Method method_from_name(const std::string& name) {
  if (name == "dg") return Method::DG;
  if (name == "cg") return Method::CG;
  if (name == "cgbox") return Method::CGbox;
  if (name == "gcc") return Method::GCC;
  throw std::invalid_argument("unknown method: " + name);
}

TemporalBasis::TemporalBasis(TemporalKind kind, int order, double t0, double t1)
    : kind_(kind), order_(order), t0_(t0), t1_(t1) {
  if (kind == TemporalKind::CubicHermite && order != 3)
    throw std::invalid_argument("CubicHermite temporal basis requires k_t = 3");
  if (order < 0) throw std::invalid_argument("TemporalBasis: order < 0");
  if (kind == TemporalKind::GaussLobattoLagrange)
    lagrange_ = LagrangeBasis1D(order == 0 ? std::vector<double>{1.0}
                                           : gauss_lobatto_points(order));
}

double TemporalBasis::eval(int i, double t) const {
  const double dt = t1_ - t0_;
  const double tau = (t - t0_) / dt;
  if (kind_ == TemporalKind::GaussLobattoLagrange) return lagrange_.eval(i, tau);
  switch (i) {
    case 0: return 1.0 + tau * tau * (2.0 * tau - 3.0);          // value at t0
    case 1: return dt * tau * (1.0 + tau * (tau - 2.0));         // derivative at t0
    case 2: return tau * tau * (3.0 - 2.0 * tau);                // value at t1
    default: return dt * tau * tau * (tau - 1.0);                // derivative at t1
  }
}

double TemporalBasis::eval_deriv(int i, double t) const {
  const double dt = t1_ - t0_;
  const double tau = (t - t0_) / dt;
  if (kind_ == TemporalKind::GaussLobattoLagrange) return lagrange_.eval_deriv(i, tau) / dt;
  switch (i) {
    case 0: return 6.0 * tau * (tau - 1.0) / dt;
    case 1: return 1.0 + tau * (3.0 * tau - 4.0);
    case 2: return 6.0 * tau * (1.0 - tau) / dt;
    default: return tau * (3.0 * tau - 2.0);
  }
}

int TemporalBasis::i_lo() const {
  return 0;
}

int TemporalBasis::i_up() const {
  return kind_ == TemporalKind::CubicHermite ? 2 : order_;
}

std::vector<int> spatial_dofs_of(const SpatialSpace& space, const std::vector<int>& elems) {
  std::vector<int> dofs;
  dofs.reserve(elems.size() * (space.degree() + 1));
  for (int e : elems)
    for (int j = 0; j <= space.degree(); ++j) dofs.push_back(space.dof(e, j));
  std::sort(dofs.begin(), dofs.end());
  dofs.erase(std::unique(dofs.begin(), dofs.end()), dofs.end());
  return dofs;
}

TemporalBasis build_temporal_basis(TemporalKind kind, int k_t, double t0, double t1) {
  return TemporalBasis(kind, k_t, t0, t1);
}

SlabSpace::SlabSpace(Method method, int k_s, int k_t, const LevelSetSlab& ls,
                     const ActiveRegions& regions)
    : method_(method), k_s_(k_s), k_t_(k_t), sspace_(ls.mesh(), k_s) {
  const double t0 = ls.t0();
  const double t1 = ls.t1();
  if (method == Method::GCC) {
    if (k_t != 3) throw std::invalid_argument("GCC supports k_t = 3 only (m_r = m_c = 1)");
    m_r_ = 1;
    m_c_ = 1;
    m_t_ = k_t - m_r_ - m_c_ - 1;  // = 0
    trial_time_ = TemporalBasis(TemporalKind::CubicHermite, 3, t0, t1);
    test_time_ = TemporalBasis(TemporalKind::GaussLobattoLagrange, m_t_, t0, t1);
  } else {
    if (method != Method::DG && k_t < 1)
      throw std::invalid_argument("CG-type methods require k_t >= 1");
    trial_time_ = TemporalBasis(TemporalKind::GaussLobattoLagrange, k_t, t0, t1);
    const int test_order = (method == Method::DG) ? k_t : k_t - 1;
    test_time_ = TemporalBasis(TemporalKind::GaussLobattoLagrange, test_order, t0, t1);
  }

  sdofs_E_ = spatial_dofs_of(sspace_, regions.elems_E);
  sdofs_Eplus_ = spatial_dofs_of(sspace_, regions.elems_Eplus);
  const int nsd = sspace_.n_dofs();
  trial_state_.assign(static_cast<std::size_t>(nsd) * trial_time_.size(),
                      DofState::Inactive);
  unknown_index_.assign(trial_state_.size(), -1);
  constrained_index_.assign(trial_state_.size(), -1);
  test_index_.assign(static_cast<std::size_t>(nsd) * test_time_.size(), -1);

  auto in_E = [&](int sdof) { return std::binary_search(sdofs_E_.begin(), sdofs_E_.end(), sdof); };
  auto in_Ep = [&](int sdof) {
    return std::binary_search(sdofs_Eplus_.begin(), sdofs_Eplus_.end(), sdof);
  };

  // Trial activation per method.
  for (int i = 0; i < trial_time_.size(); ++i) {
    for (int j = 0; j < nsd; ++j) {
      DofState st = DofState::Inactive;
      switch (method) {
        case Method::DG:
          if (in_E(j)) st = DofState::Active;
          break;
        case Method::CG:
          if (i == trial_time_.i_lo()) {
            if (in_E(j)) st = DofState::Constrained;
          } else if (i == trial_time_.i_up()) {
            if (in_Ep(j)) st = DofState::Active;
          } else if (in_E(j)) {
            st = DofState::Active;
          }
          break;
        case Method::CGbox:
          if (in_Ep(j)) st = (i == trial_time_.i_lo()) ? DofState::Constrained : DofState::Active;
          break;
        case Method::GCC:
          if (in_Ep(j)) st = (i <= m_r_) ? DofState::Constrained : DofState::Active;
          break;
      }
      trial_state_[idx(j, i)] = st;
      if (st == DofState::Active) {
        unknown_index_[idx(j, i)] = static_cast<int>(unknown_dofs_.size());
        unknown_dofs_.emplace_back(j, i);
      } else if (st == DofState::Constrained) {
        constrained_index_[idx(j, i)] = static_cast<int>(constrained_dofs_.size());
        constrained_dofs_.emplace_back(j, i);
      }
    }
  }
  if (unknown_dofs_.empty()) throw std::runtime_error("empty trial space on slab");

  // Test numbering.
  n_test_ = 0;
  for (int m = 0; m < test_time_.size(); ++m) {
    for (int j = 0; j < nsd; ++j) {
      bool active = false;
      switch (method) {
        case Method::DG:
          active = in_E(j);
          break;
        case Method::CG:
          active = (m == test_time_.i_up()) ? in_Ep(j) : in_E(j);
          break;
        case Method::CGbox:
        case Method::GCC:
          active = in_Ep(j);
          break;
      }
      if (active) test_index_[m * nsd + j] = n_test_++;
    }
  }
  if (method == Method::GCC) {
    colloc_row_.assign(static_cast<std::size_t>(m_c_) * nsd, -1);
    for (int b = 0; b < m_c_; ++b)
      for (int j = 0; j < nsd; ++j)
        if (in_Ep(j)) colloc_row_[b * nsd + j] = n_test_++;
  }
  if (n_test_ != n_unknowns())
    throw std::runtime_error("slab space is not square: " + std::to_string(n_test_) +
                             " test vs " + std::to_string(n_unknowns()) + " trial dofs");
}

SlabSpace build_slab_space(Method method, int k_s, int k_t, const LevelSetSlab& ls,
                           const ActiveRegions& regions) {
  return SlabSpace(method, k_s, k_t, ls, regions);
}

DiscreteValue eval_discrete(const SlabSolution& u, const SlabSpace& space,
                            const SlabDeformation& def, double x, double t) {
  const SpatialSpace& ss = space.space();
  const BackgroundMesh& mesh = ss.mesh();
  const int e = mesh.locate(x);
  const double xhat = def.invert_elem(e, x, t);
  double jx, jt;
  def.jacobian_elem(e, xhat, t, jx, jt);
  const double tau = (xhat - mesh.elem_lo(e)) / mesh.h;
  double v = 0.0, vdx = 0.0, vdt = 0.0;
  for (int i = 0; i < space.n_trial_layers(); ++i) {
    const double pt = space.trial_time().eval(i, t);
    const double dpt = space.trial_time().eval_deriv(i, t);
    double s = 0.0, sdx = 0.0;
    for (int j = 0; j <= ss.degree(); ++j) {
      const double c = u.layers[i][ss.dof(e, j)];
      s += c * ss.shape(j, tau);
      sdx += c * ss.shape_deriv(j, tau);
    }
    sdx /= mesh.h;
    v += pt * s;
    vdx += pt * sdx;
    vdt += dpt * s;
  }
  // chain rule through (x,t) -> (Theta(x,t), t)
  return {v, vdx / jx, vdt - (jt / jx) * vdx};
}

}  // namespace stfem
