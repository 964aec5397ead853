#pragma once

#include <utility>
#include <vector>

#include "stfem/deform.hpp"
#include "stfem/regions.hpp"
#include "stfem/spatial.hpp"

namespace stfem {

enum class Method { DG, CG, CGbox, GCC };

const char* method_name(Method m);
Method method_from_name(const std::string& name);

enum class TemporalKind { GaussLobattoLagrange, CubicHermite };

// Basis of P^k on the slab interval. The Lagrange kind sits on Gauss-Lobatto
// points so that p_i(t_{n-1}) = delta_{i,i_lo} and p_i(t_n) = delta_{i,i_up}.
// The Hermite kind (k = 3) carries value/derivative conditions at both
// endpoints; index 0 is the value at t_{n-1}, index 1 the first derivative
// there (scaled to unit physical derivative).
class TemporalBasis {
public:
  TemporalBasis() = default;
  TemporalBasis(TemporalKind kind, int order, double t0, double t1);

  TemporalKind kind() const { return kind_; }
  int order() const { return order_; }
  int size() const { return order_ + 1; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

  double eval(int i, double t) const;
  double eval_deriv(int i, double t) const;

  int i_lo() const;  // basis index associated with t_{n-1}
  int i_up() const;  // basis index associated with t_n

private:
  TemporalKind kind_ = TemporalKind::GaussLobattoLagrange;
  int order_ = 0;
  double t0_ = 0.0, t1_ = 1.0;
  LagrangeBasis1D lagrange_;
};

enum class DofState : char { Inactive, Active, Constrained };

// Active-dof bookkeeping for one slab and one method. Spatial dofs are
// numbered over the full background mesh; a dof participates if its element
// is in the method's active region. Trial layers follow the method rules
// (initial layers constrained for CG/CGbox/GCC); the test space uses its own
// temporal order, plus collocation rows for GCC.
class SlabSpace {
public:
  SlabSpace() = default;
  SlabSpace(Method method, int k_s, int k_t, const LevelSetSlab& ls,
            const ActiveRegions& regions);

  Method method() const { return method_; }
  int k_s() const { return k_s_; }
  int k_t() const { return k_t_; }
  const SpatialSpace& space() const { return sspace_; }
  const TemporalBasis& trial_time() const { return trial_time_; }
  const TemporalBasis& test_time() const { return test_time_; }
  int n_trial_layers() const { return trial_time_.size(); }
  int n_test_layers() const { return test_time_.size(); }
  int m_r() const { return m_r_; }
  int m_c() const { return m_c_; }
  int m_t() const { return m_t_; }

  int n_unknowns() const { return static_cast<int>(unknown_dofs_.size()); }
  int n_test() const { return n_test_; }
  int n_constrained() const { return static_cast<int>(constrained_dofs_.size()); }

  DofState trial_state(int sdof, int layer) const { return trial_state_[idx(sdof, layer)]; }
  // Column index of an unknown (sdof, layer), or -1.
  int unknown_index(int sdof, int layer) const { return unknown_index_[idx(sdof, layer)]; }
  // Position in the constrained list, or -1.
  int constrained_index(int sdof, int layer) const {
    return constrained_index_[idx(sdof, layer)];
  }
  // Row index of a temporal test dof (sdof, layer), or -1.
  int test_index(int sdof, int layer) const { return test_index_[idx(sdof, layer)]; }
  // Row index of a GCC collocation test dof, or -1.
  int colloc_row(int sdof, int block) const {
    return colloc_row_.empty() ? -1 : colloc_row_[block * sspace_.n_dofs() + sdof];
  }

  const std::vector<std::pair<int, int>>& unknown_dofs() const { return unknown_dofs_; }
  const std::vector<std::pair<int, int>>& constrained_dofs() const {
    return constrained_dofs_;
  }

  // Spatial dofs supported on E resp. E^+ (sorted).
  const std::vector<int>& sdofs_E() const { return sdofs_E_; }
  const std::vector<int>& sdofs_Eplus() const { return sdofs_Eplus_; }

private:
  int idx(int sdof, int layer) const { return layer * sspace_.n_dofs() + sdof; }

  Method method_ = Method::DG;
  int k_s_ = 1, k_t_ = 1;
  int m_r_ = 0, m_c_ = 0, m_t_ = 0;
  SpatialSpace sspace_;
  TemporalBasis trial_time_;
  TemporalBasis test_time_;
  std::vector<DofState> trial_state_;
  std::vector<int> unknown_index_;
  std::vector<int> constrained_index_;
  std::vector<int> test_index_;
  std::vector<int> colloc_row_;
  std::vector<std::pair<int, int>> unknown_dofs_;
  std::vector<std::pair<int, int>> constrained_dofs_;
  std::vector<int> sdofs_E_;
  std::vector<int> sdofs_Eplus_;
  int n_test_ = 0;
};

std::vector<int> spatial_dofs_of(const SpatialSpace& space, const std::vector<int>& elems);

TemporalBasis build_temporal_basis(TemporalKind kind, int k_t, double t0, double t1);

SlabSpace build_slab_space(Method method, int k_s, int k_t, const LevelSetSlab& ls,
                           const ActiveRegions& regions);

// One slab's solution as full layer tables (constrained layers filled in).
struct SlabSolution {
  std::vector<std::vector<double>> layers;  // [trial layer][spatial dof]
};

struct DiscreteValue {
  double value;
  double dx;
  double dt;
};

// Evaluate the mapped discrete function u = u_hat o (Theta^st)^{-1} at a
// physical point, with chain-rule derivatives through the deformation.
DiscreteValue eval_discrete(const SlabSolution& u, const SlabSpace& space,
                            const SlabDeformation& def, double x, double t);

}  // namespace stfem
