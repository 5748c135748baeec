#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "flipgraph/canonical.hpp"
#include "flipgraph/marking.hpp"

namespace testing {

using namespace flipgraph;

inline const std::vector<SurfaceSpec>& small_surfaces() {
  static const std::vector<SurfaceSpec> v{{0, 3}, {0, 4}, {1, 1}, {1, 2}, {0, 5}, {2, 1}, {1, 3}, {0, 6}};
  return v;
}

inline EdgeRef random_edge(const std::vector<EdgeRef>& edges, std::mt19937_64& rng) {
  return edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)];
}

/// Random triangle permutation and per-triangle rotation, old slot -> new slot.
inline std::vector<int> random_relabeling(int triangles, std::mt19937_64& rng) {
  std::vector<int> perm(triangles);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> map(3 * triangles);
  for (int t = 0; t < triangles; ++t) {
    const int r = std::uniform_int_distribution<int>(0, 2)(rng);
    for (int k = 0; k < 3; ++k) map[3 * t + k] = 3 * perm[t] + (k + r) % 3;
  }
  return map;
}

inline CombTriangulation random_walk(CombTriangulation t, int steps, std::mt19937_64& rng) {
  for (int i = 0; i < steps; ++i) t = flip(t, random_edge(exchangeable_edges(t), rng));
  return t;
}

inline MarkedTriangulation random_walk(MarkedTriangulation m, int steps, std::mt19937_64& rng) {
  for (int i = 0; i < steps; ++i) m = flip_marked(m, random_edge(exchangeable_edges(m.shape), rng));
  return m;
}

/// Same triangulation up to moving triangles around: an orientation-preserving
/// isomorphism fixing every edge id.
inline bool same_labeled(const CombTriangulation& a, const CombTriangulation& b) {
  std::vector<int> ids(a.num_edges());
  std::iota(ids.begin(), ids.end(), 0);
  for (const auto& iso : isomorphisms(a, b)) {
    if (iso.orientation_preserving && iso.edge_map(a, b) == ids) return true;
  }
  return false;
}

}  // namespace testing
