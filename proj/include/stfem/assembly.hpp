#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "stfem/quadrature.hpp"
#include "stfem/spaces.hpp"

namespace stfem {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RuleMode {
  bool topology_preserving = true;
  int substeps = 1;
  int order_factor = 1;
};

// Initial data entering a slab: the element-wise transferred trace for the
// DG upwind right-hand side, and nodal values for the constrained layers of
// the CG/CGbox/GCC trial spaces.
struct InitialData {
  ElementwiseField upwind_trace;                        // DG
  std::vector<std::vector<double>> constrained_layers;  // [trial layer][spatial dof]
};

// Square system over the active trial dofs of one slab. nze counts the
// structurally touched matrix entries.
struct SlabSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  long long nze = 0;
  Method method = Method::DG;
};

struct AssemblyInput {
  const LevelSetSlab* ls = nullptr;
  const ActiveRegions* regions = nullptr;
  const SlabDeformation* def = nullptr;
  const SlabSpace* space = nullptr;
  const ProblemDefinition* prob = nullptr;
  const InitialData* init = nullptr;
  RuleMode rule_mode;
  double gamma_J = 0.05;
  int spatial_exactness = 0;  // 0: default 2 k_s + q_s

  int spat_order() const {
    return spatial_exactness > 0 ? spatial_exactness : 2 * space->k_s() + ls->q_s();
  }
  double gamma_tilde() const {
    return (1.0 + (ls->t1() - ls->t0()) / ls->mesh().h) * gamma_J;
  }
};

// Accumulator holding the matrix, right-hand side and the structural-nonzero
// mask. Constrained trial columns either move to the rhs (forms acting on
// the full function u) or are dropped (ghost penalties act on u_0 only).
class SystemAccumulator {
public:
  explicit SystemAccumulator(const AssemblyInput& in);

  void add(int row, int sdof, int layer, double value, bool acts_on_full_u);
  void add_rhs(int row, double value) { rhs_(row) += value; }

  SlabSystem finish() const;

  Eigen::MatrixXd& matrix() { return matrix_; }
  Eigen::VectorXd& rhs() { return rhs_; }

private:
  const AssemblyInput* in_;
  Eigen::MatrixXd matrix_;
  Eigen::VectorXd rhs_;
  std::vector<char> touched_;
};

// B^n and f^n: space-time volume terms over the mapped cut prisms.
void assemble_volume(const AssemblyInput& in, SystemAccumulator& acc);

// DG upwind coupling at t_{n-1} and its transferred right-hand side.
void assemble_upwind(const AssemblyInput& in, SystemAccumulator& acc);

// Ghost penalties. Time-integrated modes carry gamma_tilde = (1 + dt/h)
// gamma_J; fixed-time modes carry plain gamma_J.
void assemble_ghost_penalty_time(const AssemblyInput& in, const std::vector<int>& facets,
                                 SystemAccumulator& acc);
void assemble_ghost_penalty_at(const AssemblyInput& in, const std::vector<int>& facets,
                               double t, bool colloc_rows, SystemAccumulator& acc);

// GCC collocation rows at time t_l (spatial test functions on E^+).
void assemble_collocation(const AssemblyInput& in, double t_l, SystemAccumulator& acc);

// Method dispatch; returns the square system with initial data moved to the
// right-hand side.
SlabSystem assemble_slab(const AssemblyInput& in);

// Dense LU with partial pivoting; raises SolverError (naming gamma_J) when a
// pivot falls under 1e-13 * ||A||_inf.
SlabSolution solve_slab(const AssemblyInput& in, const SlabSystem& sys);

}  // namespace stfem
