#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stfem/deform.hpp"

using namespace stfem;

namespace {

LevelSetSlab interp(const BackgroundMesh& mesh, ScalarField phi, double t0, double t1,
                    int q_s, int q_t) {
  LevelSetSlab ls(mesh, 1, t0, t1, q_s, q_t);
  for (int i = 0; i <= q_t; ++i) {
    const double ti = ls.temporal_node(i);
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= q_s; ++j)
        ls.coeff(i)[ls.space().dof(e, j)] = phi(ls.space().node_coord(e, j), ti);
  }
  return ls;
}

ScalarField moving_interval_phi() {
  return [](double x, double t) { return std::abs(x - std::sin(2.0 * M_PI * t) / M_PI) - 0.5; };
}

}  // namespace

TEST_CASE("linear level set gives the identity map") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  const LevelSetSlab ls = interp(mesh, [](double x, double t) { return x - t; }, 0.0, 0.25, 2, 1);
  ActiveRegions r = build_regions(ls, 1.1, 1.0);
  const SlabDeformation def = build_slab_deformation(ls, r);
  for (int i = 0; i < def.n_temporal(); ++i)
    for (double d : def.disp(i)) CHECK(d == 0.0);
  double jx, jt;
  def.jacobian(0.3, 0.1, jx, jt);
  CHECK(jx == 1.0);
  CHECK(jt == 0.0);
}

TEST_CASE("quadratic nodal solve on [0,1]") {
  // phi(x) = x^2 - 0.25 on a single element; interior node 0.5 must map to
  // sqrt(0.5), solving phi(0.5 + d) = phi_lin(0.5) = 0.25
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 1);
  LevelSetSlab ls(mesh, 1, 0.0, 1.0, 2, 0);
  ls.coeff(0) = {-0.25, 0.75, 0.0};  // vertices, then midpoint node value
  const std::vector<double> disp = build_coefficient_map(ls, 0, {0});
  const int mid_dof = ls.space().dof(0, 1);
  CHECK(disp[mid_dof] == doctest::Approx(std::sqrt(0.5) - 0.5).epsilon(1e-12));
  CHECK(disp[ls.space().dof(0, 0)] == 0.0);
  CHECK(disp[ls.space().dof(0, 2)] == 0.0);
}

TEST_CASE("vertex fixation on the moving interval") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  const LevelSetSlab ls = interp(mesh, moving_interval_phi(), 0.0, 0.125, 3, 2);
  ActiveRegions r = build_regions(ls, 1.1, 2.0);
  const SlabDeformation def = build_slab_deformation(ls, r);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v)
    for (double t : {0.0, 0.06, 0.125})
      CHECK(def.eval(mesh.vertex(v), t) == doctest::Approx(mesh.vertex(v)).epsilon(1e-15));
}

TEST_CASE("curved level set: jacobian, inversion, root mapping") {
  // genuinely curved-in-space level set so the displacement is nonzero
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 6);
  auto phi = [](double x, double t) { return x * x - (0.36 + 0.1 * t); };
  const LevelSetSlab ls = interp(mesh, phi, 0.0, 0.5, 2, 1);
  ActiveRegions r = build_regions(ls, 1.1, 0.2);
  const SlabDeformation def = build_slab_deformation(ls, r);

  bool any_nonzero = false;
  for (int i = 0; i < def.n_temporal(); ++i)
    for (double d : def.disp(i)) any_nonzero = any_nonzero || d != 0.0;
  CHECK(any_nonzero);

  SUBCASE("spatial jacobian vs finite differences, positivity") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> pick_t(0.0, 0.5);
    for (int e : r.elems_cut_slab) {
      for (int s = 0; s < 8; ++s) {
        const double x = mesh.elem_lo(e) + (0.1 + 0.8 * s / 7.0) * mesh.h;
        const double t = pick_t(rng);
        double jx, jt;
        def.jacobian_elem(e, x, t, jx, jt);
        CHECK(jx > 0.0);
        const double d = 1e-6;
        const double fd =
            (def.eval_elem(e, x + d, t) - def.eval_elem(e, x - d, t)) / (2.0 * d);
        CHECK(jx == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }

  SUBCASE("inversion round trip") {
    for (int e : r.elems_cut_slab)
      for (double s : {0.2, 0.5, 0.8})
        for (double t : {0.1, 0.3, 0.5}) {
          const double x = mesh.elem_lo(e) + s * mesh.h;
          const double y = def.eval_elem(e, x, t);
          CHECK(def.invert_at_time(y, t) == doctest::Approx(x).epsilon(1e-12));
        }
  }

  SUBCASE("zero of phi_lin maps to zero of phi_h (polynomial level set)") {
    // phi is a tensor polynomial of degree (2,1), so phi_h = phi; the mapped
    // root of phi_lin must hit the exact root up to the solver tolerance
    for (double t : {0.05, 0.25, 0.45}) {
      const double exact_root = std::sqrt(0.36 + 0.1 * t);
      const int e = mesh.locate(exact_root);
      const int vl = mesh.elements[e][0];
      const int vr = mesh.elements[e][1];
      const double pl = ls.philin_vertex(vl, t);
      const double pr = ls.philin_vertex(vr, t);
      REQUIRE(pl * pr < 0.0);
      const double xlin = mesh.vertex(vl) + pl / (pl - pr) * mesh.h;
      const double y = def.eval_elem(e, xlin, t);
      CHECK(std::abs(ls.eval_phih(y, t)) < 1e-10);
    }
  }
}

TEST_CASE("transfer operators") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  const SpatialSpace uspace(mesh, 3);
  std::vector<int> all_elems;
  for (int e = 0; e < mesh.n_elements; ++e) all_elems.push_back(e);

  // two slabs of the moving interval with q = 2: deformations of adjacent
  // slabs at the shared time t = 0.125
  const LevelSetSlab ls1 = interp(mesh, moving_interval_phi(), 0.0, 0.125, 2, 2);
  const LevelSetSlab ls2 = interp(mesh, moving_interval_phi(), 0.125, 0.25, 2, 2);
  ActiveRegions r1 = build_regions(ls1, 1.1, 2.0);
  ActiveRegions r2 = build_regions(ls2, 1.1, 2.0);
  const SlabDeformation def1 = build_slab_deformation(ls1, r1);
  const SlabDeformation def2 = build_slab_deformation(ls2, r2);

  SUBCASE("equal deformations act as the identity") {
    std::vector<double> u(uspace.n_dofs());
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    for (double& c : u) c = val(rng);
    const ElementwiseField ew = transfer_elementwise(uspace, u, def1, def1, all_elems);
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= 3; ++j)
        CHECK(ew.vals[e][j] == doctest::Approx(u[uspace.dof(e, j)]).epsilon(1e-13));
    const std::vector<double> uc = transfer_continuous(uspace, u, def1, def1, all_elems);
    for (int d = 0; d < uspace.n_dofs(); ++d)
      CHECK(uc[d] == doctest::Approx(u[d]).epsilon(1e-13));
  }

  SUBCASE("global polynomials are reproduced pointwise") {
    std::vector<double> u(uspace.n_dofs());
    auto poly = [](double x) { return 1.0 + x * (0.5 + x * (-2.0 + 0.75 * x)); };
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= 3; ++j) u[uspace.dof(e, j)] = poly(uspace.node_coord(e, j));
    // u is a mapped function; transferring its reference coefficients between
    // the two deformations reproduces the composed values at the new nodes
    const ElementwiseField ew = transfer_elementwise(uspace, u, def1, def2, all_elems);
    const double tj = ls1.t1();
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(-0.99, 0.99);
    for (int s = 0; s < 100; ++s) {
      const double y = pick(rng);
      const int e = mesh.locate(y);
      const double xhat2 = def2.invert_elem(e, y, tj);
      const double xhat1 = def1.invert_elem(e, y, tj);
      const double expect = poly(0.0) == 0.0 ? 0.0 : 0.0;  // placeholder, overwritten below
      (void)expect;
      const double got = ew.eval_elem(uspace, e, xhat2);
      const double ref = uspace.eval_elem(e, u, xhat1);
      CHECK(got == doctest::Approx(ref).epsilon(1e-11));
    }
  }

  SUBCASE("transfer differs from identity only where deformations differ") {
    std::vector<double> u(uspace.n_dofs());
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= 3; ++j)
        u[uspace.dof(e, j)] = std::sin(2.0 * uspace.node_coord(e, j));
    const ElementwiseField ew = transfer_elementwise(uspace, u, def1, def2, all_elems);
    for (int e = 0; e < mesh.n_elements; ++e) {
      const bool moved = def1.element_deformed(e) || def2.element_deformed(e);
      if (!moved) {
        for (int j = 0; j <= 3; ++j)
          CHECK(ew.vals[e][j] == doctest::Approx(u[uspace.dof(e, j)]).epsilon(1e-13));
      }
    }
  }

  SUBCASE("continuous transfer output is continuous") {
    std::vector<double> u(uspace.n_dofs());
    for (int e = 0; e < mesh.n_elements; ++e)
      for (int j = 0; j <= 3; ++j)
        u[uspace.dof(e, j)] = std::cos(3.0 * uspace.node_coord(e, j));
    const std::vector<double> uc = transfer_continuous(uspace, u, def1, def2, all_elems);
    // a single global coefficient vector is trivially continuous; check the
    // averaged vertex values match both incident element transfers within
    // the averaging rule
    const ElementwiseField ew = transfer_elementwise(uspace, u, def1, def2, all_elems);
    for (int v = 1; v < mesh.n_elements; ++v) {
      const double avg = 0.5 * (ew.vals[v - 1][3] + ew.vals[v][0]);
      CHECK(uc[v] == doctest::Approx(avg).epsilon(1e-13));
    }
  }
}

TEST_CASE("deformation discontinuity across slabs shrinks under refinement") {
  double gap[2];
  for (int lvl = 0; lvl < 2; ++lvl) {
    const int n = 8 << lvl;
    const BackgroundMesh mesh = build_mesh(-1.0, 1.0, n);
    const double dt = 0.125 / (1 << lvl);
    auto phi = [](double x, double t) { return x * x - (0.36 + 0.2 * t); };
    const LevelSetSlab ls1 = interp(mesh, phi, 0.0, dt, 2, 2);
    const LevelSetSlab ls2 = interp(mesh, phi, dt, 2.0 * dt, 2, 2);
    const SlabDeformation d1 = build_slab_deformation(ls1, build_regions(ls1, 1.1, 0.5));
    const SlabDeformation d2 = build_slab_deformation(ls2, build_regions(ls2, 1.1, 0.5));
    double g = 0.0;
    for (int s = 0; s <= 400; ++s) {
      const double x = -1.0 + 2.0 * s / 400.0;
      g = std::max(g, std::abs(d1.eval(x, dt) - d2.eval(x, dt)));
    }
    gap[lvl] = g;
  }
  CHECK(gap[0] / gap[1] > std::pow(2.0, 2.4));  // O(h^{q_s+1} + dt^{q_t+1}), q = 2
}

TEST_CASE("under-resolved geometry raises a descriptive error") {
  // displacement would exceed h when the level set oscillates inside one cell
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 1);
  LevelSetSlab ls(mesh, 1, 0.0, 1.0, 2, 0);
  ls.coeff(0) = {-0.02, -0.01, 1.0};  // wild midpoint value, no bracket for the node solve
  CHECK_THROWS_AS((void)build_coefficient_map(ls, 0, {0}), std::runtime_error);
}
