#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stfem/levelset.hpp"

using namespace stfem;

namespace {

ProblemDefinition with_phi(ScalarField phi) {
  ProblemDefinition p;
  p.phi = std::move(phi);
  return p;
}

}  // namespace

TEST_CASE("tensor polynomial reproduced exactly") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  const TimeSlabbing slabs = build_slabs(1.0, 2);
  auto phi = [](double x, double t) { return x - t; };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 1, 1);
  for (double x : {-0.9, -0.3, 0.3, 0.77})
    for (double t : {0.05, 0.2, 0.5}) {
      CHECK(ls.eval_phih(x, t) == doctest::Approx(x - t).epsilon(1e-14));
      CHECK(ls.eval_philin(x, t) == doctest::Approx(x - t).epsilon(1e-14));
    }
  CHECK(ls.eval_philin(0.3, 0.2) == doctest::Approx(0.1).epsilon(1e-13));
}

TEST_CASE("higher order tensor polynomial") {
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 3);
  const TimeSlabbing slabs = build_slabs(1.0, 1);
  auto phi = [](double x, double t) { return (x * x - 0.3) * (1.0 + t) + t * t; };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 2, 2);
  for (double x : {0.1, 0.45, 0.9})
    for (double t : {0.1, 0.6, 1.0})
      CHECK(ls.eval_phih(x, t) == doctest::Approx(phi(x, t)).epsilon(1e-13));
}

TEST_CASE("constant level set") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  const TimeSlabbing slabs = build_slabs(0.5, 1);
  const LevelSetSlab ls = interpolate_levelset(with_phi([](double, double) { return -1.0; }),
                                               mesh, slabs, 1, 3, 2);
  for (double x : {-0.8, 0.2})
    for (double t : {0.1, 0.4}) {
      CHECK(ls.eval_phih(x, t) == doctest::Approx(-1.0));
      CHECK(ls.eval_philin(x, t) == doctest::Approx(-1.0));
    }
}

TEST_CASE("philin quadratic midpoint example") {
  // element [0,1], q_s = 2, nodal values (-1, 0, 1): vertex interpolant
  // vanishes at the midpoint
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 1);
  LevelSetSlab ls(mesh, 1, 0.0, 1.0, 2, 0);
  ls.coeff(0) = {-1.0, 1.0, 0.0};  // vertices 0,1 then interior node
  CHECK(ls.eval_philin(0.5, 0.3) == doctest::Approx(0.0));
  CHECK(ls.eval_phih(0.5, 0.9) == doctest::Approx(0.0));
}

TEST_CASE("philin agrees with phih at vertices (random samples)") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  const TimeSlabbing slabs = build_slabs(0.5, 2);
  auto phi = [](double x, double t) {
    return std::abs(x - std::sin(2.0 * M_PI * t) / M_PI) - 0.5;
  };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 2, 3, 2);
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> pick_v(0, static_cast<int>(mesh.vertices.size()) - 1);
  std::uniform_real_distribution<double> pick_t(ls.t0(), ls.t1());
  for (int s = 0; s < 100; ++s) {
    const int v = pick_v(rng);
    const double t = pick_t(rng);
    const double x = mesh.vertex(v);
    CHECK(ls.eval_philin(x, t) == doctest::Approx(ls.eval_phih(x, t)).epsilon(1e-12));
  }
}

TEST_CASE("coefficient decomposition round-trips at the interpolation grid") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  const TimeSlabbing slabs = build_slabs(0.5, 2);
  auto phi = [](double x, double t) { return std::cos(3.0 * x) + std::exp(t) * x; };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 3, 3);
  for (int i = 0; i <= ls.q_t(); ++i) {
    const double ti = ls.temporal_node(i);
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= ls.q_s(); ++j) {
        const double xj = ls.space().node_coord(e, j);
        const double expect = phi(xj, ti);
        CHECK(ls.eval_phih(xj, ti) ==
              doctest::Approx(expect).epsilon(8.0 * std::numeric_limits<double>::epsilon()));
      }
  }
}

TEST_CASE("slab continuity of phi_h across interfaces") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  const TimeSlabbing slabs = build_slabs(0.5, 4);
  auto phi = [](double x, double t) {
    return std::abs(x - std::sin(2.0 * M_PI * t) / M_PI) - 0.5;
  };
  const LevelSetSlab ls1 = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 2, 2);
  const LevelSetSlab ls2 = interpolate_levelset(with_phi(phi), mesh, slabs, 2, 2, 2);
  const double tn = slabs.t_upper(1);
  for (int e = 0; e < mesh.n_elements; ++e)
    for (int j = 0; j <= 2; ++j) {
      const double xj = ls1.space().node_coord(e, j);
      CHECK(ls1.eval_phih(xj, tn) == doctest::Approx(ls2.eval_phih(xj, tn)).epsilon(1e-13));
    }
}

TEST_CASE("spatial derivative vs central finite difference") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  const TimeSlabbing slabs = build_slabs(0.5, 2);
  auto phi = [](double x, double t) { return std::sin(2.0 * x + t) + x * x; };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 4, 2);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pick_x(-0.9, 0.9);
  std::uniform_real_distribution<double> pick_t(ls.t0(), ls.t1());
  for (int s = 0; s < 20; ++s) {
    const double x = pick_x(rng);
    const double t = pick_t(rng);
    const int e = mesh.locate(x);
    if (std::abs(x - mesh.elem_lo(e)) < 1e-3 || std::abs(x - mesh.elem_hi(e)) < 1e-3)
      continue;  // keep FD stencil inside one element
    const double d = 1e-6;
    const double fd = (ls.eval_phih(x + d, t) - ls.eval_phih(x - d, t)) / (2.0 * d);
    CHECK(ls.eval_phih_dx(x, t) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("q_t = 0 gives time-independent values") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  const TimeSlabbing slabs = build_slabs(0.5, 1);
  auto phi = [](double x, double t) { return x * x - 0.25 + 0.0 * t; };
  const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 2, 0);
  CHECK(ls.eval_phih(0.3, 0.1) == doctest::Approx(ls.eval_phih(0.3, 0.49)));
  CHECK(ls.eval_philin(0.3, 0.1) == doctest::Approx(ls.eval_philin(0.3, 0.49)));
}

TEST_CASE("moving interval interpolation error shrinks at the expected rate") {
  auto phi = [](double x, double t) {
    return std::abs(x - std::sin(2.0 * M_PI * t) / M_PI) - 0.5;
  };
  // sampled max error away from the kink, two refinement levels, q = 2
  double errs[2];
  for (int lvl = 0; lvl < 2; ++lvl) {
    const int n = 16 << lvl;
    const BackgroundMesh mesh = build_mesh(-1.0, 1.0, n);
    const TimeSlabbing slabs = build_slabs(0.5, 4 << lvl);
    const LevelSetSlab ls = interpolate_levelset(with_phi(phi), mesh, slabs, 1, 2, 2);
    double err = 0.0;
    for (int sx = 0; sx <= 200; ++sx)
      for (int st = 0; st <= 20; ++st) {
        const double x = -1.0 + 2.0 * sx / 200;
        const double t = ls.t0() + (ls.t1() - ls.t0()) * st / 20;
        if (std::abs(x - std::sin(2.0 * M_PI * t) / M_PI) < 4.0 * mesh.h) continue;
        err = std::max(err, std::abs(ls.eval_phih(x, t) - phi(x, t)));
      }
    errs[lvl] = err;
  }
  CHECK(errs[0] / errs[1] > std::pow(2.0, 2.4));
}

TEST_CASE("boundary trajectories follow the convection field") {
  // (w,1) orthogonal to the space-time normal: x'(t) = w(x(t),t) on the
  // boundary, checked by finite differences on sampled trajectories.
  auto rho = [](double t) { return std::sin(2.0 * M_PI * t) / M_PI; };
  auto w = [](double, double t) { return 2.0 * std::cos(2.0 * M_PI * t); };
  for (double sign : {-1.0, 1.0}) {
    for (double t : {0.05, 0.2, 0.4}) {
      const double d = 1e-5;
      auto xb = [&](double s) { return rho(s) + sign * 0.5; };
      const double fd = (xb(t + d) - xb(t - d)) / (2.0 * d);
      CHECK(fd == doctest::Approx(w(xb(t), t)).epsilon(1e-6));
    }
  }
}
