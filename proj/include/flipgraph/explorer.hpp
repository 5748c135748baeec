#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "flipgraph/canonical.hpp"
#include "flipgraph/marking.hpp"

namespace flipgraph {

inline constexpr std::size_t kDefaultBallCap = 2'000'000;
inline constexpr std::size_t kDefaultQuotientCap = 100'000;

struct BallVertex {
  MarkedTriangulation marked;
  VertexKey key;
  int depth = 0;
};

/// An undirected flip-graph edge; `u_arc` is the arc removed from u, `v_arc`
/// the arc removed from v.
struct BallEdge {
  int u = 0;
  int v = 0;
  ArcKey u_arc;
  ArcKey v_arc;
};

/// Explicit ball of the flip graph around the base vertex. Vertices are
/// indexed depth-major, sorted by VertexKey within each depth.
struct FlipGraphBall {
  VertexKey center;
  int radius = 0;
  std::vector<BallVertex> vertices;
  std::vector<BallEdge> edges;
  std::vector<std::vector<int>> adjacency;
  bool truncated = false;
  /// Every vertex at depth <= completed_depth has all of its neighbours.
  int completed_depth = -1;

  std::size_t size() const { return vertices.size(); }
  int index_of(const VertexKey& k) const;
  /// Vertices at depth <= completed_depth: their full neighbourhood is present.
  bool interior(int v) const { return vertices[v].depth <= completed_depth; }
  /// Radius up to which every vertex of the true ball is present.
  int certified_radius() const { return truncated ? completed_depth + 1 : radius; }

  std::unordered_map<VertexKey, int, VertexKeyHash> index;
};

FlipGraphBall build_ball(const BaseContext& ctx, int radius, std::size_t cap = kDefaultBallCap,
                         unsigned threads = 1);

struct QuotientVertex {
  CanonicalKey key;
  CombTriangulation representative;
  std::size_t automorphisms = 0;
  int exchangeable_edges = 0;
};

/// One flip out of a quotient vertex, one per orbit of exchangeable edges
/// under the representative's automorphism group.
struct QuotientEdgeEnd {
  int from = 0;
  int to = 0;
  int edge = 0;
  int orbit_size = 0;
};

struct QuotientGraph {
  SurfaceSpec spec;
  std::vector<QuotientVertex> vertices;
  std::vector<QuotientEdgeEnd> edge_ends;
  bool truncated = false;

  int index_of(const CanonicalKey& k) const;
};

QuotientGraph build_quotient(const SurfaceSpec& s, std::size_t cap = kDefaultQuotientCap);

/// Orbits of the edges of t under its automorphism group.
std::vector<std::vector<int>> edge_orbits(const CombTriangulation& t);

}  // namespace flipgraph
