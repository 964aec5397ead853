#pragma once

#include <array>
#include <vector>

namespace stfem {

// Uniform 1D background mesh. Immutable after construction; every other
// module indexes into it.
struct BackgroundMesh {
  double domain_lo = 0.0;
  double domain_hi = 0.0;
  int n_elements = 0;
  double h = 0.0;
  std::vector<double> vertices;              // n_elements + 1, strictly increasing
  std::vector<std::array<int, 2>> elements;  // (left vertex, right vertex)
  std::vector<int> interior_facets;          // vertex indices shared by two elements

  double vertex(int v) const { return vertices[v]; }
  double elem_lo(int e) const { return vertices[elements[e][0]]; }
  double elem_hi(int e) const { return vertices[elements[e][1]]; }

  // Facet patch omega_F: the two elements incident to interior facet with
  // vertex index v (elements v-1 and v).
  std::array<int, 2> facet_patch(int v) const { return {v - 1, v}; }

  // Element containing x (clamped to the domain).
  int locate(double x) const;
};

struct TimeSlabbing {
  double t_end = 0.0;
  int n_slabs = 0;
  double dt = 0.0;

  // Slab n in 1..N covers (t_{n-1}, t_n].
  double t_lower(int n) const { return t_end * (n - 1) / n_slabs; }
  double t_upper(int n) const { return t_end * n / n_slabs; }
};

BackgroundMesh build_mesh(double lo, double hi, int n);
TimeSlabbing build_slabs(double t_end, int n_slabs);

}  // namespace stfem
