#include "stfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stfem {

int BackgroundMesh::locate(double x) const {
  const double s = (x - domain_lo) / h;
  int e = static_cast<int>(std::floor(s));
  return std::clamp(e, 0, n_elements - 1);
}

BackgroundMesh build_mesh(double lo, double hi, int n) {
  if (!(hi > lo)) throw std::invalid_argument("build_mesh: hi <= lo");
  if (n < 1) throw std::invalid_argument("build_mesh: non-positive element count");
  BackgroundMesh mesh;
  mesh.domain_lo = lo;
  mesh.domain_hi = hi;
  mesh.n_elements = n;
  mesh.h = (hi - lo) / n;
  mesh.vertices.resize(n + 1);
  for (int i = 0; i <= n; ++i) mesh.vertices[i] = lo + (hi - lo) * i / n;
  mesh.vertices.back() = hi;
  mesh.elements.resize(n);
  for (int e = 0; e < n; ++e) mesh.elements[e] = {e, e + 1};
  for (int v = 1; v < n; ++v) mesh.interior_facets.push_back(v);
  return mesh;
}

TimeSlabbing build_slabs(double t_end, int n_slabs) {
  if (!(t_end > 0.0)) throw std::invalid_argument("build_slabs: non-positive final time");
  if (n_slabs < 1) throw std::invalid_argument("build_slabs: non-positive slab count");
  TimeSlabbing slabs;
  slabs.t_end = t_end;
  slabs.n_slabs = n_slabs;
  slabs.dt = t_end / n_slabs;
  return slabs;
}

}  // namespace stfem
