#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "stfem/mesh.hpp"

using namespace stfem;

TEST_CASE("uniform mesh construction") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 4);
  CHECK(mesh.h == doctest::Approx(0.5));
  REQUIRE(mesh.vertices.size() == 5);
  CHECK(mesh.vertices[0] == -1.0);
  CHECK(mesh.vertices[2] == doctest::Approx(0.0));
  CHECK(mesh.vertices[4] == 1.0);
  CHECK(mesh.interior_facets.size() == 3);

  double len = 0.0;
  for (int e = 0; e < mesh.n_elements; ++e) len += mesh.elem_hi(e) - mesh.elem_lo(e);
  CHECK(std::abs(len - 2.0) <= 8.0 * std::numeric_limits<double>::epsilon() * 2.0);
}

TEST_CASE("single element mesh has no interior facets") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 1);
  CHECK(mesh.interior_facets.empty());
  CHECK(mesh.n_elements == 1);
}

TEST_CASE("experiment mesh size h = 0.5^(i_s+1)") {
  const int i_s = 2;
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 1 << (i_s + 1));
  CHECK(mesh.h == doctest::Approx(0.125));
}

TEST_CASE("facet patches have two incident elements") {
  const BackgroundMesh mesh = build_mesh(0.0, 1.0, 3);
  for (int v : mesh.interior_facets) {
    const auto patch = mesh.facet_patch(v);
    CHECK(patch[0] >= 0);
    CHECK(patch[1] < mesh.n_elements);
    CHECK(patch[1] - patch[0] == 1);
  }
}

TEST_CASE("element lookup") {
  const BackgroundMesh mesh = build_mesh(-1.0, 1.0, 8);
  CHECK(mesh.locate(-0.99) == 0);
  CHECK(mesh.locate(0.99) == 7);
  CHECK(mesh.locate(-2.0) == 0);  // clamped
  CHECK(mesh.locate(2.0) == 7);
  const int e = mesh.locate(0.1);
  CHECK(mesh.elem_lo(e) <= 0.1);
  CHECK(mesh.elem_hi(e) >= 0.1);
}

TEST_CASE("mesh preconditions") {
  CHECK_THROWS_AS(build_mesh(1.0, -1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_mesh(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("time slabbing") {
  const TimeSlabbing slabs = build_slabs(0.5, 2);
  CHECK(slabs.dt == doctest::Approx(0.25));
  CHECK(slabs.t_lower(1) == doctest::Approx(0.0));
  CHECK(slabs.t_upper(1) == doctest::Approx(0.25));
  CHECK(slabs.t_lower(2) == doctest::Approx(0.25));
  CHECK(slabs.t_upper(2) == doctest::Approx(0.5));

  const TimeSlabbing s7 = build_slabs(0.7, 7);
  CHECK(s7.dt * 7 == doctest::Approx(0.7).epsilon(1e-15));

  // one slab covering the whole interval, as in the single-step run
  const TimeSlabbing s1 = build_slabs(1.5, 1);
  CHECK(s1.t_lower(1) == 0.0);
  CHECK(s1.t_upper(1) == doctest::Approx(1.5));

  CHECK_THROWS_AS(build_slabs(-1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_slabs(1.0, 0), std::invalid_argument);
}
