#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "stfem/driver.hpp"

namespace {

int run_command(const stfem::MethodConfig& cfg, const std::string& problem, int nref, int i0,
                const std::string& out_path) {
  const stfem::ProblemDefinition prob = stfem::problem_from_name(problem);
  try {
    const std::vector<stfem::StudyRow> rows = stfem::run_convergence(cfg, prob, nref, i0);
    const std::string header = "stfem run problem=" + problem + " " + cfg.describe() +
                               " T=" + std::to_string(prob.t_end) +
                               " nref=" + std::to_string(nref) + " i0=" + std::to_string(i0) +
                               " | columns: i l2_final l2l2 nze_max wall_s geom_dist";
    if (out_path.empty()) {
      std::printf("# %s\n", header.c_str());
      for (const stfem::StudyRow& r : rows)
        std::printf("%d %.12e %.12e %lld %.6e %.12e\n", r.level, r.rep.l2_final, r.rep.l2l2,
                    r.rep.nze_max, r.rep.wall_seconds, r.rep.geom_dist);
    } else {
      stfem::write_dat(out_path, header, rows);
    }
  } catch (const stfem::ExtensionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const stfem::SolverError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unfitted space-time finite elements on a moving 1D level-set domain"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "march a method over refinement levels");
  std::string problem = "moving_interval";
  std::string method = "dg";
  std::string tint = "preserve";
  std::string refine = "both";
  std::string out_path;
  stfem::MethodConfig cfg;
  int nref = 1;
  int i0 = 0;
  run->add_option("--problem", problem, "moving_interval | poly_test | fitted_static");
  run->add_option("--method", method, "dg | cg | cgbox | gcc");
  run->add_option("--ks", cfg.k_s, "spatial polynomial order");
  run->add_option("--kt", cfg.k_t, "temporal polynomial order");
  run->add_option("--qs", cfg.q_s, "spatial geometry order (default ks)");
  run->add_option("--qt", cfg.q_t, "temporal geometry order (default kt)");
  run->add_option("--gamma", cfg.gamma_J, "ghost penalty constant gamma_J");
  run->add_option("--epsf", cfg.eps_f, "extension factor eps_f");
  run->add_option("--tint", tint, "preserve | insensitive");
  run->add_option("--substeps", cfg.rule_mode.substeps, "substeps for insensitive rule");
  run->add_option("--order-factor", cfg.rule_mode.order_factor,
                  "order factor for insensitive rule");
  run->add_option("--refine", refine, "both | space | time");
  run->add_option("--nref", nref, "number of refinement levels");
  run->add_option("--i0", i0, "first refinement level");
  run->add_option("--is", cfg.i_s, "fixed spatial level (refine=time)");
  run->add_option("--it", cfg.i_t, "fixed temporal level (refine=space)");
  run->add_option("--out", out_path, "output .dat path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.method = stfem::method_from_name(method);
    cfg.refine = stfem::refine_from_name(refine);
    if (tint == "preserve")
      cfg.rule_mode.topology_preserving = true;
    else if (tint == "insensitive")
      cfg.rule_mode.topology_preserving = false;
    else
      throw std::invalid_argument("unknown tint mode: " + tint);
    return run_command(cfg, problem, nref, i0, out_path);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
