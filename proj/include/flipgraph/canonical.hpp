#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "flipgraph/surface.hpp"

namespace flipgraph {

/// Encoding of a gluing pattern up to relabeling and orientation reversal.
struct CanonicalKey {
  std::string bytes;

  std::string hex() const;
  static CanonicalKey from_hex(const std::string& hex);
  auto operator<=>(const CanonicalKey&) const = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const { return std::hash<std::string>{}(k.bytes); }
};

/// A bijection of slots commuting with the gluings. `slot_map[x]` is the image
/// of slot x. Orientation-reversing maps reverse the cyclic order in each
/// triangle.
struct Isomorphism {
  std::vector<int> slot_map;
  bool orientation_preserving = true;

  /// Image of each source edge id.
  std::vector<int> edge_map(const CombTriangulation& from, const CombTriangulation& to) const;
  bool operator==(const Isomorphism&) const = default;
};

struct CanonicalForm {
  CanonicalKey key;
  /// Maps the input onto its canonical representative.
  Isomorphism relabeling;
};

CanonicalForm canonical_form(const CombTriangulation& t);
CanonicalKey canonical_key(const CombTriangulation& t);
/// The canonical representative itself (edge ids follow the relabeling).
CombTriangulation canonical_representative(const CombTriangulation& t);

/// Apply an isomorphism as a relabeling of `t`.
CombTriangulation apply_isomorphism(const CombTriangulation& t, const Isomorphism& iso);

/// All gluing-pattern isomorphisms t1 -> t2, orientation-preserving first.
/// Throws if the triangulations have different sizes.
std::vector<Isomorphism> isomorphisms(const CombTriangulation& t1, const CombTriangulation& t2);

bool is_isomorphism(const CombTriangulation& from, const CombTriangulation& to,
                    const Isomorphism& iso);

Isomorphism identity_isomorphism(const CombTriangulation& t);
Isomorphism inverse(const Isomorphism& iso);
/// `second` after `first`.
Isomorphism compose(const Isomorphism& second, const Isomorphism& first);

}  // namespace flipgraph
