#include "flipgraph/canonical.hpp"

#include <algorithm>
#include <numeric>

namespace flipgraph {

namespace {

constexpr char kHex[] = "0123456789abcdef";

// Position of old slot `x` inside its triangle when the triangle is entered at
// `entry` and read forward (or backward when reversing).
int local_position(int x, int entry, bool reversed) {
  const int d = reversed ? (entry % 3 - x % 3 + 3) % 3 : (x % 3 - entry % 3 + 3) % 3;
  return d;
}

int slot_at(int tri, int entry, int k, bool reversed) {
  return 3 * tri + (reversed ? (entry % 3 - k + 3) % 3 : (entry % 3 + k) % 3);
}

// Breadth-first relabeling from (start, reversed). Emits the encoding in new
// slot order and stops as soon as it exceeds `best` (when given).
// Returns 1 if the result is better than best, 0 if equal, -1 if worse.
int bfs_label(const CombTriangulation& t, int start, bool reversed, const std::vector<int>* best,
              std::vector<int>& code, std::vector<int>& slot_map) {
  const int f = t.num_triangles();
  std::vector<int> label(f, -1);
  std::vector<int> entry(f, -1);
  std::vector<int> order;
  order.reserve(f);
  code.assign(3 * f, -1);

  auto assign = [&](int slot) {
    const int tri = CombTriangulation::triangle_of(slot);
    if (label[tri] < 0) {
      label[tri] = static_cast<int>(order.size());
      entry[tri] = slot;
      order.push_back(tri);
    }
  };
  auto new_slot = [&](int x) {
    const int tri = CombTriangulation::triangle_of(x);
    return 3 * label[tri] + local_position(x, entry[tri], reversed);
  };

  assign(start);
  int state = best ? 0 : 1;
  for (std::size_t q = 0; q < order.size(); ++q) {
    const int tri = order[q];
    for (int k = 0; k < 3; ++k) {
      const int x = slot_at(tri, entry[tri], k, reversed);
      const int p = t.partner(x);
      assign(p);
      const int n = 3 * static_cast<int>(q) + k;
      code[n] = new_slot(p);
      if (state == 0) {
        if (code[n] < (*best)[n]) state = 1;
        else if (code[n] > (*best)[n]) return -1;
      }
    }
  }
  if (static_cast<int>(order.size()) != f) throw Error("triangulation is not connected");
  slot_map.assign(3 * f, -1);
  for (int x = 0; x < 3 * f; ++x) slot_map[x] = new_slot(x);
  return state;
}

// Try to extend slot0 -> target into a full isomorphism.
bool extend(const CombTriangulation& from, const CombTriangulation& to, int target, bool reversed,
            std::vector<int>& slot_map) {
  const int n = from.num_slots();
  slot_map.assign(n, -1);
  std::vector<int> tri_image(from.num_triangles(), -1);
  std::vector<char> used(to.num_triangles(), 0);
  std::vector<int> queue;

  auto map_triangle = [&](int x, int y) {
    const int tx = CombTriangulation::triangle_of(x);
    const int ty = CombTriangulation::triangle_of(y);
    if (tri_image[tx] >= 0) return slot_map[x] == y;
    if (used[ty]) return false;
    used[ty] = 1;
    tri_image[tx] = ty;
    for (int k = 0; k < 3; ++k) {
      slot_map[slot_at(tx, x, k, false)] = slot_at(ty, y, k, reversed);
    }
    queue.push_back(tx);
    return true;
  };

  if (!map_triangle(0, target)) return false;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int tri = queue[q];
    for (int k = 0; k < 3; ++k) {
      const int x = 3 * tri + k;
      if (!map_triangle(from.partner(x), to.partner(slot_map[x]))) return false;
    }
  }
  return static_cast<int>(queue.size()) == from.num_triangles();
}

}  // namespace

std::string CanonicalKey::hex() const {
  std::string out;
  out.reserve(2 * bytes.size());
  for (unsigned char c : bytes) {
    out.push_back(kHex[c >> 4]);
    out.push_back(kHex[c & 15]);
  }
  return out;
}

CanonicalKey CanonicalKey::from_hex(const std::string& hex) {
  if (hex.size() % 2 != 0) throw Error("canonical key hex has odd length");
  auto nibble = [](char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    throw Error("canonical key hex must be lowercase hexadecimal");
  };
  CanonicalKey k;
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    k.bytes.push_back(static_cast<char>(nibble(hex[i]) * 16 + nibble(hex[i + 1])));
  }
  return k;
}

std::vector<int> Isomorphism::edge_map(const CombTriangulation& from,
                                       const CombTriangulation& to) const {
  std::vector<int> out(from.num_edges());
  for (int e = 0; e < from.num_edges(); ++e) {
    out[e] = to.edge_of(slot_map[from.slots_of(EdgeRef{e})[0]]);
  }
  return out;
}

CanonicalForm canonical_form(const CombTriangulation& t) {
  std::vector<int> best_code;
  std::vector<int> best_map;
  bool best_reversed = false;
  std::vector<int> code;
  std::vector<int> map;
  for (int reversed = 0; reversed < 2; ++reversed) {
    for (int s = 0; s < t.num_slots(); ++s) {
      const int r = bfs_label(t, s, reversed != 0, best_code.empty() ? nullptr : &best_code, code, map);
      if (r == 1) {
        best_code.swap(code);
        best_map.swap(map);
        best_reversed = reversed != 0;
      }
    }
  }
  CanonicalForm out;
  for (int v : best_code) {
    out.key.bytes.push_back(static_cast<char>((v >> 8) & 0xff));
    out.key.bytes.push_back(static_cast<char>(v & 0xff));
  }
  out.relabeling.slot_map = std::move(best_map);
  out.relabeling.orientation_preserving = !best_reversed;
  return out;
}

CanonicalKey canonical_key(const CombTriangulation& t) { return canonical_form(t).key; }

CombTriangulation canonical_representative(const CombTriangulation& t) {
  return apply_isomorphism(t, canonical_form(t).relabeling);
}

CombTriangulation apply_isomorphism(const CombTriangulation& t, const Isomorphism& iso) {
  return relabel(t, iso.slot_map);
}

std::vector<Isomorphism> isomorphisms(const CombTriangulation& t1, const CombTriangulation& t2) {
  if (t1.num_slots() != t2.num_slots() || t1.num_vertices() != t2.num_vertices()) {
    throw Error("isomorphisms requested between triangulations of different surfaces");
  }
  std::vector<Isomorphism> out;
  std::vector<int> map;
  for (int reversed = 0; reversed < 2; ++reversed) {
    for (int y = 0; y < t2.num_slots(); ++y) {
      if (extend(t1, t2, y, reversed != 0, map)) out.push_back({map, reversed == 0});
    }
  }
  return out;
}

bool is_isomorphism(const CombTriangulation& from, const CombTriangulation& to,
                    const Isomorphism& iso) {
  const int n = from.num_slots();
  if (to.num_slots() != n || static_cast<int>(iso.slot_map.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int tri = 0; tri < from.num_triangles(); ++tri) {
    const int y0 = iso.slot_map[3 * tri];
    if (y0 < 0 || y0 >= n) return false;
    for (int k = 0; k < 3; ++k) {
      const int y = iso.slot_map[3 * tri + k];
      if (y != slot_at(CombTriangulation::triangle_of(y0), y0, k, !iso.orientation_preserving)) {
        return false;
      }
      if (hit[y]) return false;
      hit[y] = 1;
    }
  }
  for (int x = 0; x < n; ++x) {
    if (to.partner(iso.slot_map[x]) != iso.slot_map[from.partner(x)]) return false;
  }
  return true;
}

Isomorphism identity_isomorphism(const CombTriangulation& t) {
  Isomorphism iso;
  iso.slot_map.resize(t.num_slots());
  std::iota(iso.slot_map.begin(), iso.slot_map.end(), 0);
  return iso;
}

Isomorphism inverse(const Isomorphism& iso) {
  Isomorphism out;
  out.slot_map.assign(iso.slot_map.size(), -1);
  for (std::size_t x = 0; x < iso.slot_map.size(); ++x) out.slot_map[iso.slot_map[x]] = static_cast<int>(x);
  out.orientation_preserving = iso.orientation_preserving;
  return out;
}

Isomorphism compose(const Isomorphism& second, const Isomorphism& first) {
  Isomorphism out;
  out.slot_map.resize(first.slot_map.size());
  for (std::size_t x = 0; x < first.slot_map.size(); ++x) {
    out.slot_map[x] = second.slot_map[first.slot_map[x]];
  }
  out.orientation_preserving = first.orientation_preserving == second.orientation_preserving;
  return out;
}

}  // namespace flipgraph
