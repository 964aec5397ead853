#include "stfem/driver.hpp"

#include <chrono>
#include <climits>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace stfem {

RefineMode refine_from_name(const std::string& name) {
  if (name == "both") return RefineMode::Both;
  if (name == "space") return RefineMode::Space;
  if (name == "time") return RefineMode::Time;
  throw std::invalid_argument("unknown refine mode: " + name);
}

const char* refine_name(RefineMode mode) {
  switch (mode) {
    case RefineMode::Both: return "both";
    case RefineMode::Space: return "space";
    case RefineMode::Time: return "time";
  }
  return "?";
}

MethodConfig MethodConfig::at_level(int i) const {
  MethodConfig c = *this;
  switch (refine) {
    case RefineMode::Both: c.i_s = i; c.i_t = i; break;
    case RefineMode::Space: c.i_s = i; break;
    case RefineMode::Time: c.i_t = i; break;
  }
  return c;
}

std::string MethodConfig::describe() const {
  std::ostringstream os;
  os << "method=" << method_name(method) << " ks=" << k_s << " kt=" << k_t
     << " qs=" << qs() << " qt=" << qt() << " gamma=" << gamma_J << " epsf=" << eps_f
     << " tint=" << (rule_mode.topology_preserving ? "preserve" : "insensitive")
     << " substeps=" << rule_mode.substeps << " order_factor=" << rule_mode.order_factor
     << " refine=" << refine_name(refine) << " is=" << i_s << " it=" << i_t
     << " tbasis=" << (method == Method::GCC ? "cubic-hermite" : "gauss-lobatto-lagrange");
  return os.str();
}

namespace {

double eval_ref_value(const SlabSpace& sp, const SlabSolution& sol, int e, double x,
                      double t) {
  const SpatialSpace& ss = sp.space();
  const double tau = (x - ss.mesh().elem_lo(e)) / ss.mesh().h;
  double v = 0.0;
  for (int i = 0; i < sp.n_trial_layers(); ++i) {
    const double pt = sp.trial_time().eval(i, t);
    if (pt == 0.0) continue;
    for (int j = 0; j <= ss.degree(); ++j)
      v += pt * sol.layers[i][ss.dof(e, j)] * ss.shape(j, tau);
  }
  return v;
}

std::vector<double> trace_at_end(const SlabBundle& b) {
  const SlabSpace& sp = *b.space;
  std::vector<double> trace(sp.space().n_dofs(), 0.0);
  for (int i = 0; i < sp.n_trial_layers(); ++i) {
    const double pt = sp.trial_time().eval(i, b.ls.t1());
    if (pt == 0.0) continue;
    for (std::size_t d = 0; d < trace.size(); ++d) trace[d] += pt * b.sol.layers[i][d];
  }
  return trace;
}

// Nodal field of the physical time derivative of the slab solution at its
// end time (the mesh-velocity term vanishes at vertices by vertex fixation).
std::vector<double> physical_dt_trace(const SlabBundle& b) {
  const SlabSpace& sp = *b.space;
  const SpatialSpace& ss = sp.space();
  const double t1 = b.ls.t1();
  std::vector<double> trace = trace_at_end(b);
  std::vector<double> dt_layer(ss.n_dofs(), 0.0);
  for (std::size_t d = 0; d < dt_layer.size(); ++d)
    for (int i = 0; i < sp.n_trial_layers(); ++i)
      dt_layer[d] += sp.trial_time().eval_deriv(i, t1) * b.sol.layers[i][d];
  std::vector<double> out(ss.n_dofs(), 0.0);
  for (int e : b.regions.elems_Eplus) {
    for (int j = 0; j <= ss.degree(); ++j) {
      const double xj = ss.node_coord(e, j);
      double jx, jt;
      b.def.jacobian_elem(e, xj, t1, jx, jt);
      out[ss.dof(e, j)] = dt_layer[ss.dof(e, j)] - (jt / jx) * ss.eval_elem_deriv(e, trace, xj);
    }
  }
  return out;
}

std::vector<double> interpolate_nodal(const SpatialSpace& ss, const SlabDeformation& def,
                                      double t, const std::function<double(double)>& fn) {
  std::vector<double> g(ss.n_dofs(), 0.0);
  for (int e = 0; e < ss.mesh().n_elements; ++e)
    for (int j = 0; j <= ss.degree(); ++j)
      g[ss.dof(e, j)] = fn(def.eval_elem(e, ss.node_coord(e, j), t));
  return g;
}

// Hermite derivative layer: transferred physical d/dt datum plus the
// mesh-velocity correction at interior nodes.
std::vector<double> gcc_derivative_layer(const SpatialSpace& ss, const SlabDeformation& def,
                                         double t_start, const std::vector<double>& g0,
                                         const std::vector<double>& gD,
                                         const std::vector<int>& elems) {
  std::vector<double> g1 = gD;
  for (int e : elems) {
    for (int j = 1; j < ss.degree(); ++j) {
      const double xj = ss.node_coord(e, j);
      double jx, jt;
      def.jacobian_elem(e, xj, t_start, jx, jt);
      g1[ss.dof(e, j)] = gD[ss.dof(e, j)] + (jt / jx) * ss.eval_elem_deriv(e, g0, xj);
    }
  }
  return g1;
}

InitialData build_initial_data(const MethodConfig& cfg, const ProblemDefinition& prob,
                               const SlabBundle& cur, const SlabBundle* prev) {
  const SlabSpace& sp = *cur.space;
  const SpatialSpace& ss = sp.space();
  InitialData init;
  init.constrained_layers.assign(sp.n_trial_layers(),
                                 std::vector<double>(ss.n_dofs(), 0.0));
  const double t_start = cur.ls.t0();

  if (cfg.method == Method::DG) {
    if (prev == nullptr) {
      init.upwind_trace.degree = ss.degree();
      init.upwind_trace.vals.assign(ss.mesh().n_elements,
                                    std::vector<double>(ss.degree() + 1, 0.0));
      for (int e : cur.regions.elems_E)
        for (int j = 0; j <= ss.degree(); ++j)
          init.upwind_trace.vals[e][j] =
              prob.u0(cur.def.eval_elem(e, ss.node_coord(e, j), t_start));
    } else {
      init.upwind_trace = transfer_elementwise(ss, trace_at_end(*prev), prev->def, cur.def,
                                               prev->regions.elems_E);
    }
    return init;
  }

  const int i_lo = sp.trial_time().i_lo();
  std::vector<double> g0;
  if (prev == nullptr) {
    g0 = interpolate_nodal(ss, cur.def, t_start, prob.u0);
  } else {
    g0 = transfer_continuous(ss, trace_at_end(*prev), prev->def, cur.def,
                             prev->regions.elems_Eplus);
  }
  init.constrained_layers[i_lo] = g0;

  if (cfg.method == Method::GCC) {
    std::vector<double> gD;
    if (prev == nullptr) {
      if (!prob.u_t_exact)
        throw std::invalid_argument("GCC initial slab needs u_t_exact in the problem");
      gD = interpolate_nodal(ss, cur.def, t_start,
                             [&](double y) { return prob.u_t_exact(y, t_start); });
    } else {
      gD = transfer_continuous(ss, physical_dt_trace(*prev), prev->def, cur.def,
                               prev->regions.elems_Eplus);
    }
    init.constrained_layers[1] =
        gcc_derivative_layer(ss, cur.def, t_start, g0, gD, cur.regions.elems_Eplus);
  }
  return init;
}

double slab_l2l2_sq(const ProblemDefinition& prob, const SlabBundle& b, int norm_order) {
  double acc = 0.0;
  for (int e : b.regions.elems_E) {
    const SpaceTimeQuadRule rule =
        st_rule_topology_preserving(b.ls, e, b.space->k_t(), norm_order);
    for (const SpaceTimePoint& q : rule.points) {
      double jx, jt;
      b.def.jacobian_elem(e, q.x, q.t, jx, jt);
      const double err = eval_ref_value(*b.space, b.sol, e, q.x, q.t) -
                         prob.u_exact(b.def.eval_elem(e, q.x, q.t), q.t);
      acc += q.w * jx * err * err;
    }
  }
  return acc;
}

double final_l2_sq(const ProblemDefinition& prob, const SlabBundle& b, int norm_order) {
  const double T = b.ls.t1();
  double acc = 0.0;
  for (int e : b.regions.elems_E) {
    for (const WeightedPoint& q : fixed_time_cut_rule(b.ls, &b.def, e, T, norm_order)) {
      const double err = eval_ref_value(*b.space, b.sol, e, q.x, T) -
                         prob.u_exact(b.def.eval_elem(e, q.x, T), T);
      acc += q.w * err * err;
    }
  }
  return acc;
}

double closer(double best, double candidate, double ref) {
  if (std::isnan(best)) return candidate;
  return std::abs(candidate - ref) < std::abs(best - ref) ? candidate : best;
}

double nearest_phi_root(const ProblemDefinition& prob, double t, double y, double h) {
  for (double span = 2.0 * h;; span *= 4.0) {
    const int ns = 128;
    double best = std::numeric_limits<double>::quiet_NaN();
    double prev_x = y - span;
    double prev_v = prob.phi(prev_x, t);
    for (int i = 1; i <= ns; ++i) {
      const double x = y - span + 2.0 * span * i / ns;
      const double v = prob.phi(x, t);
      if (prev_v == 0.0) best = closer(best, prev_x, y);
      if (prev_v * v < 0.0) {
        double a = prev_x, bx = x, va = prev_v;
        for (int it = 0; it < 100; ++it) {
          const double m = 0.5 * (a + bx);
          const double vm = prob.phi(m, t);
          if (va * vm <= 0.0)
            bx = m;
          else {
            a = m;
            va = vm;
          }
        }
        best = closer(best, 0.5 * (a + bx), y);
      }
      prev_x = x;
      prev_v = v;
    }
    if (!std::isnan(best)) return best;
    if (span > 64.0 * h)
      throw std::runtime_error("no exact boundary point found near mapped root");
  }
}

double slab_geom_dist(const ProblemDefinition& prob, const SlabBundle& b) {
  const BackgroundMesh& mesh = b.ls.mesh();
  const QuadRule1D tg = gauss_rule(2 * (b.ls.q_t() + 1));
  std::vector<double> times = {b.ls.t0(), b.ls.t1()};
  for (double tau : tg.points) times.push_back(b.ls.t0() + b.ls.dt() * tau);
  double dist = 0.0;
  for (double t : times) {
    for (int e : b.regions.elems_cut_slab) {
      const double pl = b.ls.philin_vertex(mesh.elements[e][0], t);
      const double pr = b.ls.philin_vertex(mesh.elements[e][1], t);
      if (pl == 0.0 && pr == 0.0) continue;
      if (pl * pr > 0.0) continue;  // not cut at this time
      const double lam = pl / (pl - pr);
      const double xroot = mesh.elem_lo(e) + lam * mesh.h;
      const double y = b.def.eval_elem(e, xroot, t);
      dist = std::max(dist, std::abs(y - nearest_phi_root(prob, t, y, mesh.h)));
    }
  }
  return dist;
}

}  // namespace

MarchResult march(const MethodConfig& cfg, const ProblemDefinition& prob) {
  const auto t_begin = std::chrono::steady_clock::now();
  const int q_s = cfg.qs();
  const int q_t = cfg.qt();
  const double h_target = std::pow(0.5, cfg.i_s + 1);
  const int n_elem =
      std::max(1, static_cast<int>(std::lround((prob.domain_hi - prob.domain_lo) / h_target)));
  const double dt_target = std::pow(2.0, -cfg.i_t - 2);
  const int n_slabs = std::max(1, static_cast<int>(std::lround(prob.t_end / dt_target)));

  MarchResult res;
  res.mesh = std::make_shared<BackgroundMesh>(
      build_mesh(prob.domain_lo, prob.domain_hi, n_elem));
  const TimeSlabbing slabs = build_slabs(prob.t_end, n_slabs);

  ErrorReport rep;
  rep.nze_min = LLONG_MAX;
  double l2l2_sq = 0.0;
  double geom = 0.0;
  std::unique_ptr<SlabBundle> prev;

  for (int n = 1; n <= n_slabs; ++n) {
    auto cur = std::make_unique<SlabBundle>();
    cur->ls = interpolate_levelset(prob, *res.mesh, slabs, n, q_s, q_t);
    cur->regions = build_regions(cur->ls, cfg.eps_f, prob.w_inf);
    if (cfg.method != Method::DG && prev != nullptr &&
        !check_extension_constraint(prev->regions, cur->regions.elems_E))
      throw ExtensionError("extension constraint violated entering slab " +
                           std::to_string(n) + "; increase eps_f");
    cur->def = build_slab_deformation(cur->ls, cur->regions);
    cur->space =
        std::make_unique<SlabSpace>(cfg.method, cfg.k_s, cfg.k_t, cur->ls, cur->regions);
    cur->init = build_initial_data(cfg, prob, *cur, prev.get());

    AssemblyInput in;
    in.ls = &cur->ls;
    in.regions = &cur->regions;
    in.def = &cur->def;
    in.space = cur->space.get();
    in.prob = &prob;
    in.init = &cur->init;
    in.rule_mode = cfg.rule_mode;
    in.gamma_J = cfg.gamma_J;
    const SlabSystem sys = assemble_slab(in);
    rep.nze_min = std::min(rep.nze_min, sys.nze);
    rep.nze_max = std::max(rep.nze_max, sys.nze);
    cur->sol = solve_slab(in, sys);

    if (prob.has_exact()) l2l2_sq += slab_l2l2_sq(prob, *cur, in.spat_order());
    geom = std::max(geom, slab_geom_dist(prob, *cur));
    prev = std::move(cur);
  }

  if (prob.has_exact()) {
    AssemblyInput in;  // only for the default norm order
    in.ls = &prev->ls;
    in.space = prev->space.get();
    rep.l2_final = std::sqrt(final_l2_sq(prob, *prev, in.spat_order()));
    rep.l2l2 = std::sqrt(l2l2_sq);
  }
  rep.geom_dist = geom;
  if (rep.nze_min == LLONG_MAX) rep.nze_min = 0;
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  res.report = rep;
  res.final_slab = std::move(prev);
  return res;
}

ProblemDefinition manufactured_moving_interval() {
  ProblemDefinition p;
  p.name = "moving_interval";
  const double r0 = 0.5;
  auto rho = [](double t) { return std::sin(2.0 * M_PI * t) / M_PI; };
  auto drho = [](double t) { return 2.0 * std::cos(2.0 * M_PI * t); };
  p.phi = [rho, r0](double x, double t) { return std::abs(x - rho(t)) - r0; };
  p.w = [drho](double, double t) { return drho(t); };
  p.w_inf = 2.0;
  const double a = M_PI / r0;
  p.u_exact = [rho, a](double x, double t) {
    return std::cos(a * (x - rho(t))) * std::sin(M_PI * t);
  };
  p.u_t_exact = [rho, drho, a](double x, double t) {
    const double s = x - rho(t);
    return M_PI * std::cos(a * s) * std::cos(M_PI * t) +
           a * drho(t) * std::sin(a * s) * std::sin(M_PI * t);
  };
  // f = u_t + w u_x - u_xx; the convection term cancels the domain motion
  p.f = [rho, a](double x, double t) {
    const double s = x - rho(t);
    return std::cos(a * s) * (M_PI * std::cos(M_PI * t) + a * a * std::sin(M_PI * t));
  };
  p.u0 = [](double) { return 0.0; };
  return p;
}

ProblemDefinition manufactured_poly_test() {
  ProblemDefinition p;
  p.name = "poly_test";
  const double R = 0.505;
  p.phi = [R](double x, double t) { return std::abs(x - 0.5 * t) - R; };
  p.w = [](double, double) { return 0.5; };
  p.w_inf = 0.5;
  p.u_exact = [R](double x, double t) {
    const double s = x - 0.5 * t;
    const double q = s * s - R * R;
    return q * q;
  };
  p.u_t_exact = [R](double x, double t) {
    const double s = x - 0.5 * t;
    return -2.0 * s * (s * s - R * R);
  };
  p.f = [R](double x, double t) {
    const double s = x - 0.5 * t;
    return 4.0 * R * R - 12.0 * s * s;
  };
  p.u0 = [R](double x) {
    const double q = x * x - R * R;
    return q * q;
  };
  return p;
}

ProblemDefinition manufactured_fitted_static() {
  ProblemDefinition p;
  p.name = "fitted_static";
  p.phi = [](double, double) { return -1.0; };
  p.w = [](double, double) { return 0.5; };
  p.w_inf = 0.5;
  p.u_exact = [](double x, double t) { return x * t; };
  p.u_t_exact = [](double x, double) { return x; };
  p.f = [](double x, double t) { return x + 0.5 * t; };
  p.u0 = [](double) { return 0.0; };
  return p;
}

ProblemDefinition problem_from_name(const std::string& name) {
  if (name == "moving_interval") return manufactured_moving_interval();
  if (name == "poly_test") return manufactured_poly_test();
  if (name == "fitted_static") return manufactured_fitted_static();
  throw std::invalid_argument("unknown problem: " + name);
}

std::vector<StudyRow> run_convergence(const MethodConfig& cfg, const ProblemDefinition& prob,
                                      int nref, int i0, bool record_failures) {
  std::vector<StudyRow> rows;
  for (int i = i0; i < i0 + nref; ++i) {
    const MethodConfig level_cfg = cfg.at_level(i);
    StudyRow row;
    row.level = i;
    if (record_failures) {
      try {
        row.rep = march(level_cfg, prob).report;
      } catch (const SolverError&) {
        row.rep.l2_final = std::numeric_limits<double>::infinity();
        row.rep.l2l2 = std::numeric_limits<double>::infinity();
      }
    } else {
      row.rep = march(level_cfg, prob).report;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::vector<StudyRow>> run_gamma_study(const MethodConfig& cfg,
                                                   const ProblemDefinition& prob,
                                                   const std::vector<double>& gammas,
                                                   int nref) {
  std::vector<std::vector<StudyRow>> out;
  for (double g : gammas) {
    MethodConfig c = cfg;
    c.gamma_J = g;
    out.push_back(run_convergence(c, prob, nref));
  }
  return out;
}

std::vector<StudyRow> run_superconvergence(const MethodConfig& cfg,
                                           const ProblemDefinition& prob, int i_s_fixed,
                                           int it_first, int it_last) {
  MethodConfig c = cfg;
  c.refine = RefineMode::Time;
  c.i_s = i_s_fixed;
  return run_convergence(c, prob, it_last - it_first + 1, it_first);
}

std::vector<NzeRow> run_nze_study(const ProblemDefinition& prob,
                                  const std::vector<Method>& methods,
                                  const std::vector<int>& ks, const std::vector<int>& its,
                                  int i_s, double eps_f) {
  std::vector<NzeRow> rows;
  for (Method m : methods) {
    for (int k : ks) {
      if (m == Method::GCC && k != 3) continue;
      for (int it : its) {
        MethodConfig cfg;
        cfg.method = m;
        cfg.k_s = cfg.k_t = k;
        cfg.eps_f = eps_f;
        cfg.i_s = i_s;
        cfg.i_t = it;
        const ErrorReport rep = march(cfg, prob).report;
        rows.push_back({m, k, it, rep.nze_min, rep.nze_max, rep.l2_final});
      }
    }
  }
  return rows;
}

std::vector<TintRow> run_tint_comparison(double gamma_J, int is_first, int is_last) {
  const ProblemDefinition prob = manufactured_poly_test();
  struct Variant {
    std::string name;
    RuleMode mode;
  };
  const std::vector<Variant> variants = {
      {"preserve", {true, 1, 1}},
      {"insensitive", {false, 1, 1}},
      {"insensitive_double_order", {false, 1, 2}},
      {"insensitive_substeps10", {false, 10, 1}},
  };
  std::vector<TintRow> rows;
  for (const Variant& v : variants) {
    MethodConfig cfg;
    cfg.method = Method::DG;
    cfg.k_s = cfg.k_t = 4;
    cfg.gamma_J = gamma_J;
    cfg.rule_mode = v.mode;
    cfg.refine = RefineMode::Space;
    cfg.i_t = 0;
    for (const StudyRow& r :
         run_convergence(cfg, prob, is_last - is_first + 1, is_first, true))
      rows.push_back({v.name, r.level, r.rep.l2_final});
  }
  return rows;
}

std::vector<double> observed_orders(const std::vector<double>& errors) {
  std::vector<double> orders;
  for (std::size_t i = 0; i + 1 < errors.size(); ++i)
    orders.push_back(std::log2(errors[i] / errors[i + 1]));
  return orders;
}

double mean_last_two_orders(const std::vector<double>& errors) {
  const std::vector<double> orders = observed_orders(errors);
  if (orders.empty()) return 0.0;
  if (orders.size() == 1) return orders.back();
  return 0.5 * (orders[orders.size() - 1] + orders[orders.size() - 2]);
}

void write_dat(const std::string& path, const std::string& header,
               const std::vector<StudyRow>& rows) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (fp == nullptr) throw std::runtime_error("cannot open output file: " + path);
  std::fprintf(fp, "# %s\n", header.c_str());
  for (const StudyRow& r : rows)
    std::fprintf(fp, "%d %.12e %.12e %lld %.6e %.12e\n", r.level, r.rep.l2_final, r.rep.l2l2,
                 r.rep.nze_max, r.rep.wall_seconds, r.rep.geom_dist);
  std::fclose(fp);
}

}  // namespace stfem
