#pragma once

#include <array>
#include <compare>
#include <span>
#include <string>
#include <vector>

#include "flipgraph/error.hpp"

namespace flipgraph {

/// Genus and puncture count of a punctured surface with negative Euler
/// characteristic.
struct SurfaceSpec {
  int genus = 0;
  int punctures = 0;

  int euler_characteristic() const { return 2 - 2 * genus - punctures; }
  int num_triangles() const { return 4 * genus - 4 + 2 * punctures; }
  int num_edges() const { return 6 * genus - 6 + 3 * punctures; }
  bool admissible() const {
    return genus >= 0 && punctures >= 1 && euler_characteristic() < 0;
  }

  /// Throws Error("χ(S) must be negative ...") when not admissible.
  static SurfaceSpec checked(int genus, int punctures);

  auto operator<=>(const SurfaceSpec&) const = default;
};

std::string to_string(const SurfaceSpec& s);

struct EdgeRef {
  int id = 0;
  auto operator<=>(const EdgeRef&) const = default;
};

/// An ideal triangulation as a gluing of triangles.
///
/// Triangle t owns the side slots 3t, 3t+1, 3t+2 listed counterclockwise;
/// side k of a triangle runs from its corner k to corner k+1. The gluing is a
/// fixed-point-free involution on slots, each pair identified
/// orientation-reversingly. Every edge owns exactly two slots.
///
/// Edge ids are stable under flip: the new diagonal inherits the id of the
/// edge it replaces. Freshly constructed triangulations number their edges by
/// the order of each edge's smallest slot.
class CombTriangulation {
 public:
  CombTriangulation() = default;
  explicit CombTriangulation(std::vector<int> gluing);
  CombTriangulation(std::vector<int> gluing, std::vector<int> edge_of_slot);

  int num_triangles() const { return static_cast<int>(gluing_.size()) / 3; }
  int num_slots() const { return static_cast<int>(gluing_.size()); }
  int num_edges() const { return static_cast<int>(edge_slots_.size()); }

  int partner(int slot) const { return gluing_[slot]; }
  int edge_of(int slot) const { return edge_of_slot_[slot]; }
  /// Both slots of an edge, smaller first.
  std::array<int, 2> slots_of(EdgeRef e) const;

  static int triangle_of(int slot) { return slot / 3; }
  static int next_slot(int slot) { return 3 * (slot / 3) + (slot % 3 + 1) % 3; }
  static int prev_slot(int slot) { return 3 * (slot / 3) + (slot % 3 + 2) % 3; }

  std::span<const int> gluing() const { return gluing_; }
  std::span<const int> edge_of_slot() const { return edge_of_slot_; }

  /// Puncture label of the corner where side `slot` starts.
  int corner_vertex(int slot) const { return corner_vertex_[slot]; }
  int num_vertices() const { return num_vertices_; }
  bool connected() const;

  void check_edge(EdgeRef e) const;

  bool operator==(const CombTriangulation& other) const {
    return gluing_ == other.gluing_ && edge_of_slot_ == other.edge_of_slot_;
  }

 private:
  void build();

  std::vector<int> gluing_;
  std::vector<int> edge_of_slot_;
  std::vector<std::array<int, 2>> edge_slots_;
  std::vector<int> corner_vertex_;
  int num_vertices_ = 0;
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool ok() const;
  /// Name of the first failing check, or empty.
  std::string first_failure() const;
};

ValidationReport validate(const CombTriangulation& t, const SurfaceSpec& s);
/// Throws Error naming the failing check.
void require_valid(const CombTriangulation& t, const SurfaceSpec& s);

bool is_exchangeable(const CombTriangulation& t, EdgeRef a);
EdgeRef dual_edge(const CombTriangulation& t, EdgeRef a);
/// Replace `a` by the other diagonal of its quadrilateral. The diagonal keeps
/// the id of `a` and sits in the same two slot positions.
CombTriangulation flip(const CombTriangulation& t, EdgeRef a);
std::vector<EdgeRef> exchangeable_edges(const CombTriangulation& t);

/// Distinct triangles incident to an edge (one for a folded edge).
std::vector<int> incident_triangles(const CombTriangulation& t, EdgeRef a);
bool share_triangle(const CombTriangulation& t, EdgeRef a, EdgeRef b);

/// Same surface with every triangle's cyclic order reversed: new slot 3t+k is
/// old slot 3t+(3-k)%3. Edge ids carry over.
CombTriangulation mirror(const CombTriangulation& t);
int mirror_slot(int slot);

/// Relabel slots by `slot_map` (old slot -> new slot). The map must send each
/// triangle onto a triangle by a rotation. Edge ids carry over.
CombTriangulation relabel(const CombTriangulation& t, std::span<const int> slot_map);

/// A valid triangulation of `s`: a fan on the standard 4g-gon (or a doubled
/// triangle for genus 0), with extra punctures inserted into triangle 0.
CombTriangulation standard_triangulation(const SurfaceSpec& s);

}  // namespace flipgraph
