#include "flipgraph/surface.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace flipgraph {

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
  std::vector<int> parent;
};

std::vector<int> edge_ids_by_first_slot(const std::vector<int>& gluing) {
  std::vector<int> ids(gluing.size(), -1);
  int next = 0;
  for (std::size_t s = 0; s < gluing.size(); ++s) {
    if (ids[s] >= 0) continue;
    const int p = gluing[s];
    if (p < 0 || p >= static_cast<int>(gluing.size())) {
      throw Error("gluing entry " + std::to_string(s) + " out of range");
    }
    ids[s] = next;
    ids[p] = next;
    ++next;
  }
  return ids;
}

}  // namespace

SurfaceSpec SurfaceSpec::checked(int genus, int punctures) {
  SurfaceSpec s{genus, punctures};
  if (genus < 0) throw Error("genus must be non-negative");
  if (punctures < 1) throw Error("at least one puncture is required");
  if (s.euler_characteristic() >= 0) {
    throw Error("χ(S) must be negative (got χ = " +
                std::to_string(s.euler_characteristic()) + " for " + to_string(s) + ")");
  }
  return s;
}

std::string to_string(const SurfaceSpec& s) {
  return "(" + std::to_string(s.genus) + "," + std::to_string(s.punctures) + ")";
}

CombTriangulation::CombTriangulation(std::vector<int> gluing)
    : gluing_(std::move(gluing)) {
  edge_of_slot_ = edge_ids_by_first_slot(gluing_);
  build();
}

CombTriangulation::CombTriangulation(std::vector<int> gluing, std::vector<int> edge_of_slot)
    : gluing_(std::move(gluing)), edge_of_slot_(std::move(edge_of_slot)) {
  build();
}

void CombTriangulation::build() {
  const int n = num_slots();
  if (n == 0 || n % 3 != 0) throw Error("slot count must be a positive multiple of 3");
  if (static_cast<int>(edge_of_slot_.size()) != n) throw Error("edge labels do not cover all slots");
  for (int s = 0; s < n; ++s) {
    const int p = gluing_[s];
    if (p < 0 || p >= n) throw Error("gluing entry " + std::to_string(s) + " out of range");
    if (p == s) throw Error("slot " + std::to_string(s) + " is glued to itself");
    if (gluing_[p] != s) throw Error("gluing is not an involution at slot " + std::to_string(s));
  }

  const int num_e = n / 2;
  edge_slots_.assign(num_e, {-1, -1});
  for (int s = 0; s < n; ++s) {
    const int e = edge_of_slot_[s];
    if (e < 0 || e >= num_e) throw Error("edge id out of range at slot " + std::to_string(s));
    if (edge_of_slot_[gluing_[s]] != e) throw Error("glued slots carry different edge ids");
    auto& pair = edge_slots_[e];
    if (pair[0] == -1) {
      pair = {std::min(s, gluing_[s]), std::max(s, gluing_[s])};
    } else if (pair[0] != std::min(s, gluing_[s])) {
      throw Error("edge id " + std::to_string(e) + " used by more than one slot pair");
    }
  }

  // Side s runs corner(s) -> corner(next(s)); a glued partner runs the other way.
  UnionFind corners(n);
  for (int s = 0; s < n; ++s) {
    const int p = gluing_[s];
    corners.unite(s, next_slot(p));
    corners.unite(next_slot(s), p);
  }
  corner_vertex_.assign(n, -1);
  std::vector<int> label(n, -1);
  num_vertices_ = 0;
  for (int s = 0; s < n; ++s) {
    const int root = corners.find(s);
    if (label[root] < 0) label[root] = num_vertices_++;
    corner_vertex_[s] = label[root];
  }
}

std::array<int, 2> CombTriangulation::slots_of(EdgeRef e) const {
  check_edge(e);
  return edge_slots_[e.id];
}

void CombTriangulation::check_edge(EdgeRef e) const {
  if (e.id < 0 || e.id >= num_edges()) {
    throw Error("edge id " + std::to_string(e.id) + " out of range [0, " +
                std::to_string(num_edges()) + ")");
  }
}

bool CombTriangulation::connected() const {
  UnionFind tris(num_triangles());
  for (int s = 0; s < num_slots(); ++s) tris.unite(triangle_of(s), triangle_of(gluing_[s]));
  for (int t = 1; t < num_triangles(); ++t) {
    if (tris.find(t) != tris.find(0)) return false;
  }
  return true;
}

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string ValidationReport::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.name;
  }
  return {};
}

ValidationReport validate(const CombTriangulation& t, const SurfaceSpec& s) {
  ValidationReport r;
  auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const int f = t.num_triangles();
  const int e = t.num_edges();
  const int v = t.num_vertices();
  add("surface_admissible", s.admissible(),
      "chi = " + std::to_string(s.euler_characteristic()) + ", punctures = " +
          std::to_string(s.punctures));
  add("triangle_count", f == s.num_triangles(),
      "F = " + std::to_string(f) + ", expected " + std::to_string(s.num_triangles()));
  add("edge_count", e == s.num_edges(),
      "E = " + std::to_string(e) + ", expected " + std::to_string(s.num_edges()));
  add("puncture_count", v == s.punctures,
      "V = " + std::to_string(v) + ", expected " + std::to_string(s.punctures));
  add("euler_characteristic", v - e + f == 2 - 2 * s.genus,
      "V - E + F = " + std::to_string(v - e + f) + ", expected " + std::to_string(2 - 2 * s.genus));
  add("connected", t.connected(), "");
  return r;
}

void require_valid(const CombTriangulation& t, const SurfaceSpec& s) {
  const auto report = validate(t, s);
  if (report.ok()) return;
  for (const auto& c : report.checks) {
    if (!c.passed) throw Error("triangulation fails check '" + c.name + "': " + c.detail);
  }
}

bool is_exchangeable(const CombTriangulation& t, EdgeRef a) {
  const auto [s0, s1] = t.slots_of(a);
  if (CombTriangulation::triangle_of(s0) != CombTriangulation::triangle_of(s1)) return true;
  // A folded edge must join two distinct punctures.
  if (t.corner_vertex(s0) == t.corner_vertex(CombTriangulation::next_slot(s0))) {
    throw InvariantViolation("edge " + std::to_string(a.id) +
                             " is folded but both of its ends lie on one puncture");
  }
  return false;
}

EdgeRef dual_edge(const CombTriangulation& t, EdgeRef a) {
  if (is_exchangeable(t, a)) {
    throw Error("edge " + std::to_string(a.id) + " has no dual: it is exchangeable");
  }
  const auto [s0, s1] = t.slots_of(a);
  const int tri = CombTriangulation::triangle_of(s0);
  for (int k = 0; k < 3; ++k) {
    const int s = 3 * tri + k;
    if (s != s0 && s != s1) {
      const EdgeRef d{t.edge_of(s)};
      if (d == a) throw InvariantViolation("dual edge coincides with its argument");
      return d;
    }
  }
  throw InvariantViolation("folded triangle has no third side");
}

CombTriangulation flip(const CombTriangulation& t, EdgeRef a) {
  if (!is_exchangeable(t, a)) {
    throw Error("cannot flip edge " + std::to_string(a.id) + ": it is not exchangeable");
  }
  const auto [s, s2] = t.slots_of(a);
  const int t1 = CombTriangulation::triangle_of(s);
  const int t2 = CombTriangulation::triangle_of(s2);
  const int i = s % 3;
  const int j = s2 % 3;
  // Triangle t1 is (P,Q,R) with a = PQ; t2 is (Q,P,R'). The new diagonal is RR'.
  const int side_qr = 3 * t1 + (i + 1) % 3;
  const int side_rp = 3 * t1 + (i + 2) % 3;
  const int side_pr = 3 * t2 + (j + 1) % 3;
  const int side_rq = 3 * t2 + (j + 2) % 3;

  std::vector<int> moved(t.num_slots());
  std::iota(moved.begin(), moved.end(), 0);
  moved[side_rq] = 3 * t1 + (i + 1) % 3;  // t1 becomes (R,R',Q)
  moved[side_qr] = 3 * t1 + (i + 2) % 3;
  moved[side_rp] = 3 * t2 + (j + 1) % 3;  // t2 becomes (R',R,P)
  moved[side_pr] = 3 * t2 + (j + 2) % 3;

  std::vector<int> gluing(t.num_slots());
  std::vector<int> edges(t.num_slots());
  for (int x = 0; x < t.num_slots(); ++x) {
    if (x == s || x == s2) continue;
    gluing[moved[x]] = moved[t.partner(x)];
    edges[moved[x]] = t.edge_of(x);
  }
  gluing[s] = s2;
  gluing[s2] = s;
  edges[s] = a.id;
  edges[s2] = a.id;
  return CombTriangulation(std::move(gluing), std::move(edges));
}

std::vector<EdgeRef> exchangeable_edges(const CombTriangulation& t) {
  std::vector<EdgeRef> out;
  for (int e = 0; e < t.num_edges(); ++e) {
    if (is_exchangeable(t, EdgeRef{e})) out.push_back(EdgeRef{e});
  }
  return out;
}

std::vector<int> incident_triangles(const CombTriangulation& t, EdgeRef a) {
  const auto [s0, s1] = t.slots_of(a);
  const int t0 = CombTriangulation::triangle_of(s0);
  const int t1 = CombTriangulation::triangle_of(s1);
  if (t0 == t1) return {t0};
  return {t0, t1};
}

bool share_triangle(const CombTriangulation& t, EdgeRef a, EdgeRef b) {
  for (int ta : incident_triangles(t, a)) {
    for (int tb : incident_triangles(t, b)) {
      if (ta == tb) return true;
    }
  }
  return false;
}

int mirror_slot(int slot) { return 3 * (slot / 3) + (3 - slot % 3) % 3; }

CombTriangulation mirror(const CombTriangulation& t) {
  std::vector<int> map(t.num_slots());
  for (int s = 0; s < t.num_slots(); ++s) map[s] = mirror_slot(s);
  return relabel(t, map);
}

CombTriangulation relabel(const CombTriangulation& t, std::span<const int> slot_map) {
  const int n = t.num_slots();
  if (static_cast<int>(slot_map.size()) != n) throw Error("relabeling has the wrong size");
  std::vector<int> gluing(n, -1);
  std::vector<int> edges(n, -1);
  std::vector<int> triangle_image(t.num_triangles(), -1);
  for (int x = 0; x < n; ++x) {
    const int y = slot_map[x];
    if (y < 0 || y >= n || gluing[y] != -1) throw Error("relabeling is not a slot bijection");
    auto& img = triangle_image[CombTriangulation::triangle_of(x)];
    if (img == -1) img = CombTriangulation::triangle_of(y);
    if (img != CombTriangulation::triangle_of(y)) throw Error("relabeling splits a triangle");
    gluing[y] = slot_map[t.partner(x)];
    edges[y] = t.edge_of(x);
  }
  return CombTriangulation(std::move(gluing), std::move(edges));
}

namespace {

// Split triangle `tri` into three around a new puncture.
std::vector<int> insert_puncture(const std::vector<int>& gluing, int tri) {
  const int f = static_cast<int>(gluing.size()) / 3;
  const int n1 = f;
  const int n2 = f + 1;
  std::vector<int> moved(gluing.size());
  std::iota(moved.begin(), moved.end(), 0);
  moved[3 * tri + 1] = 3 * n1;
  moved[3 * tri + 2] = 3 * n2;

  std::vector<int> out(gluing.size() + 6, -1);
  for (std::size_t x = 0; x < gluing.size(); ++x) out[moved[x]] = moved[gluing[x]];
  auto glue = [&](int a, int b) {
    out[a] = b;
    out[b] = a;
  };
  glue(3 * tri + 1, 3 * n1 + 2);
  glue(3 * n1 + 1, 3 * n2 + 2);
  glue(3 * n2 + 1, 3 * tri + 2);
  return out;
}

}  // namespace

CombTriangulation standard_triangulation(const SurfaceSpec& s) {
  if (!s.admissible()) SurfaceSpec::checked(s.genus, s.punctures);
  std::vector<int> gluing;
  int punctures = 0;
  auto glue = [&](int a, int b) {
    gluing[a] = b;
    gluing[b] = a;
  };
  if (s.genus == 0) {
    gluing.assign(6, -1);
    glue(0, 3);
    glue(1, 5);
    glue(2, 4);
    punctures = 3;
  } else {
    // Fan from polygon corner 0 on the 4g-gon with word a1 b1 a1^-1 b1^-1 ...
    const int sides = 4 * s.genus;
    const int f = sides - 2;
    gluing.assign(3 * f, -1);
    auto polygon_side = [&](int k) {
      if (k == 0) return 0;
      if (k == sides - 1) return 3 * (f - 1) + 2;
      return 3 * (k - 1) + 1;
    };
    for (int tri = 0; tri + 1 < f; ++tri) glue(3 * tri + 2, 3 * (tri + 1));
    for (int j = 0; j < s.genus; ++j) {
      glue(polygon_side(4 * j), polygon_side(4 * j + 2));
      glue(polygon_side(4 * j + 1), polygon_side(4 * j + 3));
    }
    punctures = 1;
  }
  for (; punctures < s.punctures; ++punctures) gluing = insert_puncture(gluing, 0);
  CombTriangulation t(std::move(gluing));
  require_valid(t, s);
  return t;
}

}  // namespace flipgraph
