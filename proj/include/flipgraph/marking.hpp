#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <memory>
#include <cstdint>
#include <string>
#include <vector>

#include "flipgraph/surface.hpp"

namespace flipgraph {

/// Isotopy class of an essential arc, as its vector of interior intersection
/// numbers with the base edges. An arc isotopic to base edge j is -1 at j and
/// 0 elsewhere.
struct ArcKey {
  std::vector<std::int64_t> coords;

  /// At most one -1, everything else non-negative, not all zero.
  bool well_formed() const;
  std::string to_string() const;
  auto operator<=>(const ArcKey&) const = default;
};

struct ArcKeyHash {
  std::size_t operator()(const ArcKey& k) const;
};

/// Endpoint data of the base edges, shared by every marking built on a base.
struct BaseArcs {
  /// Base puncture labels at the two ends of each base edge.
  std::vector<std::array<int, 2>> ends;
  /// Thrice-punctured sphere: neighbourhoods of base edges have peripheral
  /// boundary, and arcs are classified by their endpoints instead.
  bool pants = false;
};

/// Fixed reference triangulation against which arcs are measured. The base
/// must have no folded triangle.
class BaseContext {
 public:
  explicit BaseContext(const SurfaceSpec& spec);
  BaseContext(const SurfaceSpec& spec, CombTriangulation base);

  const SurfaceSpec& spec() const { return spec_; }
  const CombTriangulation& base() const { return base_; }
  int num_edges() const { return base_.num_edges(); }
  const std::shared_ptr<const BaseArcs>& arcs() const { return arcs_; }

 private:
  SurfaceSpec spec_;
  CombTriangulation base_;
  std::shared_ptr<const BaseArcs> arcs_;
};

/// A vertex of the flip graph: a shape plus one arc key per edge id. `word`
/// is a flip sequence (edge ids) reaching it from the base. Corners carry the
/// base label of their puncture so arc endpoints stay identifiable.
struct MarkedTriangulation {
  CombTriangulation shape;
  std::vector<ArcKey> keys;
  std::vector<int> word;
  std::vector<int> corner_puncture;
  std::shared_ptr<const BaseArcs> base;

  /// Base puncture labels at the two ends of edge e.
  std::array<int, 2> ends(EdgeRef e) const;

  const ArcKey& key(EdgeRef e) const { return keys.at(e.id); }
  /// Edge carrying `arc`, or -1.
  int find_edge(const ArcKey& arc) const;
  bool contains(const ArcKey& arc) const { return find_edge(arc) >= 0; }
};

/// Sorted list of a vertex's arc keys; equal iff the triangulations are
/// isotopic.
struct VertexKey {
  std::vector<ArcKey> arcs;

  /// Short stable fingerprint (hex) for labels and logs.
  std::string digest() const;
  auto operator<=>(const VertexKey&) const = default;
};

struct VertexKeyHash {
  std::size_t operator()(const VertexKey& k) const;
};

MarkedTriangulation base_marked(const BaseContext& ctx);
MarkedTriangulation flip_marked(const MarkedTriangulation& m, EdgeRef a);
/// Apply a flip word (edge ids) starting from `m`.
MarkedTriangulation replay(const MarkedTriangulation& m, const std::vector<int>& word);
VertexKey vertex_key(const MarkedTriangulation& m);

/// The arc of m1 that is not in m2. Throws unless the two differ by exactly
/// one arc on each side.
ArcKey diff(const MarkedTriangulation& m1, const MarkedTriangulation& m2);
bool adjacent(const MarkedTriangulation& m1, const MarkedTriangulation& m2);

/// Throws InvariantViolation when keys are malformed or repeated.
void check_marking(const MarkedTriangulation& m);

/// Tropical exchange: coordinatewise max(a+c, b+d) - e with overflow checks.
ArcKey exchange(const ArcKey& a, const ArcKey& b, const ArcKey& c, const ArcKey& d,
                const ArcKey& e);

}  // namespace flipgraph
