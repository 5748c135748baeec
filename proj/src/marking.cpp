#include "flipgraph/marking.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace flipgraph {

namespace {

constexpr std::int64_t kCoordinateLimit = std::int64_t{1} << 62;

std::int64_t checked_add(std::int64_t x, std::int64_t y) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(x, y, &r) || r > kCoordinateLimit || r < -kCoordinateLimit) {
    throw CoordinateOverflow("arc coordinate exceeds 2^62");
  }
  return r;
}

std::size_t mix(std::size_t h, std::uint64_t v) {
  // splitmix-style combine
  v += 0x9e3779b97f4a7c15ULL + h;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::size_t>(v ^ (v >> 31));
}

}  // namespace

bool ArcKey::well_formed() const {
  int minus_ones = 0;
  bool nonzero = false;
  for (auto c : coords) {
    if (c == -1) ++minus_ones;
    else if (c < -1) return false;
    if (c != 0) nonzero = true;
  }
  return minus_ones <= 1 && nonzero;
}

std::string ArcKey::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(coords[i]);
  }
  return s + ")";
}

std::size_t ArcKeyHash::operator()(const ArcKey& k) const {
  std::size_t h = k.coords.size();
  for (auto c : k.coords) h = mix(h, static_cast<std::uint64_t>(c));
  return h;
}

std::size_t VertexKeyHash::operator()(const VertexKey& k) const {
  std::size_t h = 0;
  ArcKeyHash arc;
  for (const auto& a : k.arcs) h = mix(h, arc(a));
  return h;
}

std::string VertexKey::digest() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(VertexKeyHash{}(*this)));
  return buf;
}

BaseContext::BaseContext(const SurfaceSpec& spec)
    : BaseContext(spec, standard_triangulation(SurfaceSpec::checked(spec.genus, spec.punctures))) {}

BaseContext::BaseContext(const SurfaceSpec& spec, CombTriangulation base)
    : spec_(SurfaceSpec::checked(spec.genus, spec.punctures)), base_(std::move(base)) {
  require_valid(base_, spec_);
  auto arcs = std::make_shared<BaseArcs>();
  arcs->pants = spec_.genus == 0 && spec_.punctures == 3;
  arcs->ends.resize(base_.num_edges());
  for (int e = 0; e < base_.num_edges(); ++e) {
    if (!is_exchangeable(base_, EdgeRef{e})) {
      throw Error("base triangulation must not contain a folded triangle (edge " +
                  std::to_string(e) + ")");
    }
    const int s = base_.slots_of(EdgeRef{e})[0];
    arcs->ends[e] = {base_.corner_vertex(s), base_.corner_vertex(CombTriangulation::next_slot(s))};
  }
  arcs_ = std::move(arcs);
}

std::array<int, 2> MarkedTriangulation::ends(EdgeRef e) const {
  const int s = shape.slots_of(e)[0];
  return {corner_puncture[s], corner_puncture[CombTriangulation::next_slot(s)]};
}

int MarkedTriangulation::find_edge(const ArcKey& arc) const {
  for (std::size_t e = 0; e < keys.size(); ++e) {
    if (keys[e] == arc) return static_cast<int>(e);
  }
  return -1;
}

MarkedTriangulation base_marked(const BaseContext& ctx) {
  MarkedTriangulation m;
  m.shape = ctx.base();
  m.base = ctx.arcs();
  m.corner_puncture.resize(m.shape.num_slots());
  for (int s = 0; s < m.shape.num_slots(); ++s) m.corner_puncture[s] = m.shape.corner_vertex(s);
  const int n = ctx.num_edges();
  m.keys.resize(n);
  for (int j = 0; j < n; ++j) {
    m.keys[j].coords.assign(n, 0);
    m.keys[j].coords[j] = -1;
  }
  return m;
}

ArcKey exchange(const ArcKey& a, const ArcKey& b, const ArcKey& c, const ArcKey& d,
                const ArcKey& e) {
  ArcKey f;
  const std::size_t n = e.coords.size();
  f.coords.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto ac = checked_add(a.coords[j], c.coords[j]);
    const auto bd = checked_add(b.coords[j], d.coords[j]);
    f.coords[j] = checked_add(std::max(ac, bd), -e.coords[j]);
  }
  return f;
}

void check_marking(const MarkedTriangulation& m) {
  if (static_cast<int>(m.keys.size()) != m.shape.num_edges()) {
    throw InvariantViolation("marking has " + std::to_string(m.keys.size()) + " keys for " +
                             std::to_string(m.shape.num_edges()) + " edges");
  }
  if (static_cast<int>(m.corner_puncture.size()) != m.shape.num_slots()) {
    throw InvariantViolation("corner puncture labels do not cover the shape");
  }
  for (int s = 0; s < m.shape.num_slots(); ++s) {
    const int p = m.shape.partner(s);
    if (m.corner_puncture[s] != m.corner_puncture[CombTriangulation::next_slot(p)]) {
      throw InvariantViolation("glued corners carry different puncture labels");
    }
  }
  std::set<ArcKey> seen;
  for (const auto& k : m.keys) {
    if (!k.well_formed()) throw InvariantViolation("malformed arc key " + k.to_string());
    if (!seen.insert(k).second) throw InvariantViolation("repeated arc key " + k.to_string());
  }
}

MarkedTriangulation flip_marked(const MarkedTriangulation& m, EdgeRef a) {
  m.shape.check_edge(a);
  if (!is_exchangeable(m.shape, a)) {
    throw Error("cannot flip edge " + std::to_string(a.id) + ": it is not exchangeable");
  }
  const auto [s, s2] = m.shape.slots_of(a);
  const int i = s % 3;
  const int j = s2 % 3;
  const int t1 = CombTriangulation::triangle_of(s);
  const int t2 = CombTriangulation::triangle_of(s2);
  const auto& cp = m.corner_puncture;
  const int p = cp[s];
  const int q = cp[CombTriangulation::next_slot(s)];
  const int r = cp[CombTriangulation::prev_slot(s)];
  const int r2 = cp[CombTriangulation::prev_slot(s2)];

  // Quadrilateral sides in cyclic order; the old diagonal separates (qr, rp)
  // from (pr, rq), the new one separates (rp, pr) from (rq, qr).
  const int qr = m.shape.edge_of(CombTriangulation::next_slot(s));
  const int rp = m.shape.edge_of(CombTriangulation::prev_slot(s));
  const int pr = m.shape.edge_of(CombTriangulation::next_slot(s2));
  const int rq = m.shape.edge_of(CombTriangulation::prev_slot(s2));

  // Intersection with the boundary of a neighbourhood of base edge j is
  // 2 x_j + (ends on j's endpoints); that count obeys the tropical exchange.
  const auto& base_ends = m.base->ends;
  const std::size_t n = base_ends.size();
  auto lift = [&](const ArcKey& k, std::array<int, 2> ends) {
    ArcKey out;
    out.coords.resize(n);
    for (std::size_t jj = 0; jj < n; ++jj) {
      const auto& be = base_ends[jj];
      const int touching = (ends[0] == be[0] || ends[0] == be[1]) + (ends[1] == be[0] || ends[1] == be[1]);
      out.coords[jj] = checked_add(checked_add(k.coords[jj], k.coords[jj]), touching);
    }
    return out;
  };
  auto lifted = [&](int e) { return lift(m.keys[e], m.ends(EdgeRef{e})); };

  const ArcKey measure = exchange(lifted(qr), lifted(rp), lifted(pr), lifted(rq), lifted(a.id));
  const ArcKey offsets = lift(ArcKey{std::vector<std::int64_t>(n, 0)}, {r, r2});
  ArcKey fresh;
  fresh.coords.resize(n);
  for (std::size_t jj = 0; jj < n; ++jj) {
    if (m.base->pants) {
      // Every arc of the thrice-punctured sphere is fixed by its endpoints.
      const auto& be = base_ends[jj];
      const bool same = (r == be[0] && r2 == be[1]) || (r == be[1] && r2 == be[0]);
      const bool far_loop = r == r2 && r != be[0] && r != be[1];
      fresh.coords[jj] = same ? -1 : (far_loop ? 1 : 0);
      continue;
    }
    const auto twice = measure.coords[jj] - offsets.coords[jj];
    if (twice % 2 != 0) {
      throw InvariantViolation("odd boundary intersection while flipping edge " + std::to_string(a.id));
    }
    fresh.coords[jj] = twice / 2;
  }

  MarkedTriangulation out;
  out.shape = flip(m.shape, a);
  out.keys = m.keys;
  out.word = m.word;
  out.word.push_back(a.id);
  out.base = m.base;
  out.corner_puncture = cp;
  out.corner_puncture[3 * t1 + i] = r;  // t1 becomes (R,R',Q)
  out.corner_puncture[3 * t1 + (i + 1) % 3] = r2;
  out.corner_puncture[3 * t1 + (i + 2) % 3] = q;
  out.corner_puncture[3 * t2 + j] = r2;  // t2 becomes (R',R,P)
  out.corner_puncture[3 * t2 + (j + 1) % 3] = r;
  out.corner_puncture[3 * t2 + (j + 2) % 3] = p;

  if (fresh == m.keys[a.id]) {
    throw InvariantViolation("flip of edge " + std::to_string(a.id) + " reproduced the same arc " +
                             fresh.to_string());
  }
  out.keys[a.id] = std::move(fresh);
  check_marking(out);
  return out;
}

MarkedTriangulation replay(const MarkedTriangulation& m, const std::vector<int>& word) {
  MarkedTriangulation cur = m;
  for (int e : word) cur = flip_marked(cur, EdgeRef{e});
  return cur;
}

VertexKey vertex_key(const MarkedTriangulation& m) {
  VertexKey k{m.keys};
  std::sort(k.arcs.begin(), k.arcs.end());
  return k;
}

namespace {

// Arcs of m1 missing from m2 and vice versa.
std::pair<std::vector<ArcKey>, std::vector<ArcKey>> symmetric_difference(
    const MarkedTriangulation& m1, const MarkedTriangulation& m2) {
  const auto k1 = vertex_key(m1).arcs;
  const auto k2 = vertex_key(m2).arcs;
  std::vector<ArcKey> only1;
  std::vector<ArcKey> only2;
  std::set_difference(k1.begin(), k1.end(), k2.begin(), k2.end(), std::back_inserter(only1));
  std::set_difference(k2.begin(), k2.end(), k1.begin(), k1.end(), std::back_inserter(only2));
  return {std::move(only1), std::move(only2)};
}

}  // namespace

bool adjacent(const MarkedTriangulation& m1, const MarkedTriangulation& m2) {
  const auto [only1, only2] = symmetric_difference(m1, m2);
  return only1.size() == 1 && only2.size() == 1;
}

ArcKey diff(const MarkedTriangulation& m1, const MarkedTriangulation& m2) {
  auto [only1, only2] = symmetric_difference(m1, m2);
  if (only1.size() != 1 || only2.size() != 1) {
    throw Error("not an elementary move pair (differ by " + std::to_string(only1.size()) +
                " and " + std::to_string(only2.size()) + " arcs)");
  }
  return std::move(only1.front());
}

}  // namespace flipgraph
