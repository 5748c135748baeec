#include "flipgraph/auditor.hpp"

#include <algorithm>
#include <set>

#include "flipgraph/parallel.hpp"

namespace flipgraph {

const char* to_string(CycleKind k) {
  switch (k) {
    case CycleKind::square: return "square";
    case CycleKind::pentagon: return "pentagon";
    case CycleKind::violation: return "violation";
  }
  return "?";
}

namespace {

void extend_paths(const FlipGraphBall& ball, int max_len, std::vector<int>& path,
                  std::vector<Cycle>& out) {
  const int start = path.front();
  const int last = path.back();
  for (int w : ball.adjacency[last]) {
    if (w == start && path.size() >= 3 && path[1] < path.back()) {
      out.push_back(Cycle{path});
      continue;
    }
    if (w <= start || !ball.interior(w)) continue;
    if (static_cast<int>(path.size()) >= max_len) continue;
    if (std::find(path.begin(), path.end(), w) != path.end()) continue;
    path.push_back(w);
    extend_paths(ball, max_len, path, out);
    path.pop_back();
  }
}

const MarkedTriangulation& at(const FlipGraphBall& ball, const Cycle& c, int k) {
  const int n = static_cast<int>(c.length());
  return ball.vertices[c.vertices[((k % n) + n) % n]].marked;
}

// Edge of vertex k flipped to reach vertex k+step.
EdgeRef flipped_edge(const FlipGraphBall& ball, const Cycle& c, int k, int step) {
  const auto& here = at(ball, c, k);
  const int e = here.find_edge(diff(here, at(ball, c, k + step)));
  if (e < 0) throw InvariantViolation("cycle move arc missing from its vertex");
  return EdgeRef{e};
}

bool disjoint_quadrilaterals(const CombTriangulation& t, EdgeRef a, EdgeRef b) {
  std::set<int> tris;
  for (int x : incident_triangles(t, a)) tris.insert(x);
  for (int x : incident_triangles(t, b)) tris.insert(x);
  return tris.size() == 4;
}

// Δ1-Δn = Δ2-Δ3 for every starting vertex and both directions.
bool identity_holds(const FlipGraphBall& ball, const Cycle& c) {
  const int n = static_cast<int>(c.length());
  for (int dir : {1, -1}) {
    for (int k = 0; k < n; ++k) {
      const auto& d1 = at(ball, c, k);
      const auto& d2 = at(ball, c, k + dir);
      const auto& d3 = at(ball, c, k + 2 * dir);
      const auto& dn = at(ball, c, k - dir);
      if (diff(d1, dn) != diff(d2, d3)) return false;
    }
  }
  return true;
}

std::string check_pentagon_pattern(const FlipGraphBall& ball, const Cycle& c) {
  // Arcs that are not common to all five triangulations.
  std::vector<std::set<ArcKey>> sets;
  for (int k = 0; k < 5; ++k) {
    const auto& m = at(ball, c, k);
    sets.emplace_back(m.keys.begin(), m.keys.end());
  }
  std::set<ArcKey> moving;
  for (const auto& s : sets) {
    for (const auto& a : s) {
      if (!std::all_of(sets.begin(), sets.end(), [&](const auto& o) { return o.contains(a); })) {
        moving.insert(a);
      }
    }
  }
  if (moving.size() != 5) return "moves involve " + std::to_string(moving.size()) + " arcs, not 5";
  auto label = [&](int k) {
    std::set<ArcKey> out;
    for (const auto& a : moving) {
      if (sets[k].contains(a)) out.insert(a);
    }
    return out;
  };
  for (int k = 0; k < 5; ++k) {
    if (label(k).size() != 2) return "a vertex carries " + std::to_string(label(k).size()) + " moving arcs";
    for (int l = k + 1; l < 5; ++l) {
      std::vector<ArcKey> common;
      const auto lk = label(k);
      const auto ll = label(l);
      std::set_intersection(lk.begin(), lk.end(), ll.begin(), ll.end(), std::back_inserter(common));
      const bool consecutive = (l - k == 1) || (k == 0 && l == 4);
      if (common.size() != (consecutive ? 1u : 0u)) return "arc labels do not follow the pentagon pattern";
    }
  }
  for (int k = 0; k < 5; ++k) {
    const auto& shape = at(ball, c, k).shape;
    if (!share_triangle(shape, flipped_edge(ball, c, k, 1), flipped_edge(ball, c, k, -1))) {
      return "the two moves at a vertex do not share a triangle";
    }
  }
  return {};
}

}  // namespace

std::vector<Cycle> enumerate_simple_cycles(const FlipGraphBall& ball, int max_len, unsigned threads) {
  if (max_len > kMaxCycleLength) throw Error("cycle enumeration supports lengths up to 5");
  std::vector<std::vector<Cycle>> per_start(ball.size());
  parallel_for(ball.size(), threads, [&](std::size_t v) {
    if (!ball.interior(static_cast<int>(v))) return;
    std::vector<int> path{static_cast<int>(v)};
    extend_paths(ball, max_len, path, per_start[v]);
  });
  std::vector<Cycle> out;
  for (auto& list : per_start) {
    for (auto& c : list) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

CycleClassification classify_cycle(const FlipGraphBall& ball, const Cycle& cycle) {
  for (int v : cycle.vertices) {
    if (v < 0 || v >= static_cast<int>(ball.size())) throw Error("cycle vertex outside the ball");
  }
  const int n = static_cast<int>(cycle.length());
  for (int k = 0; k < n; ++k) {
    if (!adjacent(at(ball, cycle, k), at(ball, cycle, k + 1))) {
      throw Error("cycle is not a closed path of the ball");
    }
  }
  CycleClassification out;
  if (n == 3) {
    out.reason = "closed path of length three";
    return out;
  }
  if (n != 4 && n != 5) throw Error("only cycles of length 3, 4 or 5 can be classified");
  out.difference_identity = identity_holds(ball, cycle);
  if (!out.difference_identity) {
    out.reason = "difference identity fails";
    return out;
  }
  if (n == 4) {
    for (int k = 0; k < 4; ++k) {
      const auto& shape = at(ball, cycle, k).shape;
      if (!disjoint_quadrilaterals(shape, flipped_edge(ball, cycle, k, 1),
                                   flipped_edge(ball, cycle, k, -1))) {
        out.reason = "the two moves at a vertex have overlapping quadrilaterals";
        return out;
      }
    }
    out.kind = CycleKind::square;
    return out;
  }
  out.reason = check_pentagon_pattern(ball, cycle);
  if (out.reason.empty()) out.kind = CycleKind::pentagon;
  return out;
}

CycleReport audit_ball(const FlipGraphBall& ball, unsigned threads) {
  CycleReport report;
  const auto cycles = enumerate_simple_cycles(ball, kMaxCycleLength, threads);
  std::vector<CycleClassification> results(cycles.size());
  parallel_for(cycles.size(), threads, [&](std::size_t i) { results[i] = classify_cycle(ball, cycles[i]); });
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const auto& c = cycles[i];
    const auto& r = results[i];
    ++report.counts[c.length()];
    if (c.length() >= 4) {
      ++report.identity_checks;
      if (!r.difference_identity) ++report.identity_failures;
    }
    if (r.kind == CycleKind::square) ++report.squares;
    else if (r.kind == CycleKind::pentagon) ++report.pentagons;
    else report.violations.push_back({c, r.reason});
  }
  return report;
}

}  // namespace flipgraph
