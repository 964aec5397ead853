#pragma once

#include <memory>
#include <string>
#include <vector>

#include "stfem/assembly.hpp"

namespace stfem {

struct ExtensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RefineMode { Both, Space, Time };

RefineMode refine_from_name(const std::string& name);
const char* refine_name(RefineMode mode);

// Full description of one run: method, orders, stabilization, time
// integration and the refinement level pair (i_s, i_t); h = 0.5^(i_s+1) and
// dt = 2^(-i_t-2) as in the experiment protocol.
struct MethodConfig {
  Method method = Method::DG;
  int k_s = 1;
  int k_t = 1;
  int q_s = -1;  // -1: default to k_s
  int q_t = -1;  // -1: default to k_t
  double gamma_J = 0.05;
  double eps_f = 1.1;
  RuleMode rule_mode;
  RefineMode refine = RefineMode::Both;
  int i_s = 0;
  int i_t = 0;

  int qs() const { return q_s >= 0 ? q_s : k_s; }
  int qt() const { return q_t >= 0 ? q_t : k_t; }
  MethodConfig at_level(int i) const;
  std::string describe() const;
};

struct ErrorReport {
  double l2_final = 0.0;
  double l2l2 = 0.0;
  double geom_dist = 0.0;
  long long nze_min = 0;
  long long nze_max = 0;
  double wall_seconds = 0.0;
};

// Data of one solved slab kept alive for transfer and final-time norms.
struct SlabBundle {
  LevelSetSlab ls;
  ActiveRegions regions;
  SlabDeformation def;
  std::unique_ptr<SlabSpace> space;
  InitialData init;
  SlabSolution sol;
};

struct MarchResult {
  ErrorReport report;
  std::shared_ptr<BackgroundMesh> mesh;  // keeps the final slab's references alive
  std::unique_ptr<SlabBundle> final_slab;
};

MarchResult march(const MethodConfig& cfg, const ProblemDefinition& prob);

// Manufactured problems of the experiment section (all on [-1,1], T = 0.5).
ProblemDefinition manufactured_moving_interval();
ProblemDefinition manufactured_poly_test();
ProblemDefinition manufactured_fitted_static();
ProblemDefinition problem_from_name(const std::string& name);

struct StudyRow {
  int level = 0;
  ErrorReport rep;
};

// march over refinement levels i = i0 .. i0 + nref - 1 following cfg.refine;
// failed levels propagate unless record_failures is set (then l2 errors are
// +inf in the emitted row).
std::vector<StudyRow> run_convergence(const MethodConfig& cfg, const ProblemDefinition& prob,
                                      int nref, int i0 = 0, bool record_failures = false);

std::vector<std::vector<StudyRow>> run_gamma_study(const MethodConfig& cfg,
                                                   const ProblemDefinition& prob,
                                                   const std::vector<double>& gammas,
                                                   int nref);

std::vector<StudyRow> run_superconvergence(const MethodConfig& cfg,
                                           const ProblemDefinition& prob, int i_s_fixed,
                                           int it_first, int it_last);

struct NzeRow {
  Method method = Method::DG;
  int k = 1;
  int i_t = 0;
  long long nze_min = 0;
  long long nze_max = 0;
  double l2_final = 0.0;
};

std::vector<NzeRow> run_nze_study(const ProblemDefinition& prob, const std::vector<Method>& methods,
                                  const std::vector<int>& ks, const std::vector<int>& its,
                                  int i_s, double eps_f);

struct TintRow {
  std::string variant;
  int i_s = 0;
  double l2_final = 0.0;  // +inf marks a failed solve
};

std::vector<TintRow> run_tint_comparison(double gamma_J, int is_first, int is_last);

// Estimated orders log2(e_i / e_{i+1}) between consecutive rows.
std::vector<double> observed_orders(const std::vector<double>& errors);
// Mean of the last two order pairs (or fewer when the study is short).
double mean_last_two_orders(const std::vector<double>& errors);

// Whitespace-separated table: i, l2_final, l2l2, nze_max, wall seconds,
// geom_dist, with one '#' header line carrying the full configuration.
void write_dat(const std::string& path, const std::string& header,
               const std::vector<StudyRow>& rows);

}  // namespace stfem
