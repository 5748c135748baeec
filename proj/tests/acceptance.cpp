// Acceptance run: one PASS/FAIL line per criterion, each with its time budget.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "flipgraph/auditor.hpp"
#include "flipgraph/explorer.hpp"
#include "flipgraph/mcg.hpp"
#include "flipgraph/metric.hpp"
#include "oracles/farey.hpp"
#include "oracles/gluings.hpp"

using namespace flipgraph;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) detail << "first failure: " << what << "; ";
    passed = passed && ok;
  }
};

std::set<int> triangles_of(const CombTriangulation& t, EdgeRef a, EdgeRef b) {
  std::set<int> out;
  for (int x : incident_triangles(t, a)) out.insert(x);
  for (int x : incident_triangles(t, b)) out.insert(x);
  return out;
}

MarkedTriangulation random_vertex(const BaseContext& ctx, int steps, std::mt19937_64& rng) {
  auto m = base_marked(ctx);
  for (int i = 0; i < steps; ++i) {
    const auto edges = exchangeable_edges(m.shape);
    m = flip_marked(m, edges[std::uniform_int_distribution<std::size_t>(0, edges.size() - 1)(rng)]);
  }
  return m;
}

void criterion1(Outcome& o) {
  const BaseContext ctx({0, 3});
  for (int r = 3; r <= 6; ++r) {
    const auto ball = build_ball(ctx, r);
    o.require(ball.size() == 4 && ball.edges.size() == 3, "tripod size at r=" + std::to_string(r));
    o.require(ball.adjacency[0].size() == 3, "center degree");
    o.require(exchangeable_edges(ball.vertices[0].marked.shape).size() == 3, "center has 3 exchangeable edges");
    for (int v = 1; v < static_cast<int>(ball.size()); ++v) {
      o.require(ball.adjacency[v].size() == 1, "leaf degree");
      o.require(exchangeable_edges(ball.vertices[v].marked.shape).size() == 1, "leaf has 1 exchangeable edge");
    }
  }
  o.detail << "4 vertices, 3 edges, exchangeable 3/1/1/1";
}

void criterion2(Outcome& o) {
  const BaseContext ctx({1, 1});
  for (int r = 1; r <= 8; ++r) {
    const auto ball = build_ball(ctx, r);
    const std::size_t expected = 1 + 3 * ((std::size_t{1} << r) - 1);
    o.require(ball.size() == expected, "size at r=" + std::to_string(r));
    for (int v = 0; v < static_cast<int>(ball.size()); ++v) {
      if (ball.interior(v)) o.require(ball.adjacency[v].size() == 3, "interior degree");
    }
    o.require(enumerate_simple_cycles(ball, kMaxCycleLength).empty(), "no short cycles");
    // A connected ball with one edge fewer than vertices is a tree, so every
    // quadruple has delta 0; the scan below checks the sampled values too.
    o.require(ball.edges.size() + 1 == ball.size(), "ball is a tree at r=" + std::to_string(r));
  }
  DeltaScanOptions opts;
  opts.seed = 1;
  const auto scan = delta_scan(ctx, 8, opts);
  std::size_t quadruples = 0;
  for (const auto& e : scan.per_radius) {
    o.require(e.max_delta.twice == 0, "delta zero at r=" + std::to_string(e.radius));
    quadruples += e.quadruples;
  }
  o.detail << "r=1..8 sizes 1+3(2^r-1), degree 3, tree, no cycles <=5, delta 0 over " << quadruples
           << " scanned quadruples";
}

void criterion3(Outcome& o) {
  for (const auto& [s, r] : std::vector<std::pair<SurfaceSpec, int>>{{{0, 4}, 4}, {{1, 2}, 3}}) {
    const auto ball = build_ball(BaseContext(s), r);
    const auto report = audit_ball(ball);
    o.require(!ball.truncated, "ball complete");
    o.require(report.counts[3] == 0, "no 3-cycles");
    o.require(report.squares == report.counts[4], "every 4-cycle a square");
    o.require(report.pentagons == report.counts[5], "every 5-cycle a pentagon");
    o.require(report.identity_failures == 0 && report.clean(), "difference identity");
    o.require(report.counts[4] > 0 && report.counts[5] > 0, "cycles present");
    o.detail << to_string(s) << " r" << r << ": " << report.squares << "/" << report.counts[4] << " squares, "
             << report.pentagons << "/" << report.counts[5] << " pentagons; ";
  }
}

void criterion4(Outcome& o) {
  std::size_t flips = 0;
  std::size_t squares = 0;
  std::size_t pentagons = 0;
  for (const auto& [s, r] : std::vector<std::pair<SurfaceSpec, int>>{{{0, 4}, 3}, {{1, 2}, 2}}) {
    const auto ball = build_ball(BaseContext(s), r);
    for (const auto& bv : ball.vertices) {
      const auto& m = bv.marked;
      const auto edges = exchangeable_edges(m.shape);
      for (const EdgeRef e : edges) {
        o.require(flip_marked(flip_marked(m, e), e).keys == m.keys, "flip involution");
        ++flips;
      }
      for (const EdgeRef p : edges) {
        for (const EdgeRef q : edges) {
          if (p.id >= q.id) continue;
          const auto tris = triangles_of(m.shape, p, q);
          if (tris.size() == 4) {
            o.require(vertex_key(flip_marked(flip_marked(m, p), q)) == vertex_key(flip_marked(flip_marked(m, q), p)),
                      "square closure");
            ++squares;
          } else if (tris.size() == 3 && share_triangle(m.shape, p, q)) {
            auto cur = m;
            for (const EdgeRef e : {p, q, p, q, p}) cur = flip_marked(cur, e);
            o.require(vertex_key(cur) == vertex_key(m), "pentagon closure");
            ++pentagons;
          }
        }
      }
    }
  }
  const BaseContext torus({1, 1});
  std::size_t words = 0;
  std::function<void(const MarkedTriangulation&, const oracle::farey::Triangle&, int)> walk =
      [&](const MarkedTriangulation& m, const oracle::farey::Triangle& tri, int depth) {
        for (int e = 0; e < 3; ++e) o.require(m.key(EdgeRef{e}).coords == oracle::farey::key(tri[e]), "Farey agreement");
        ++words;
        if (depth == 10) return;
        for (int e = 0; e < 3; ++e) walk(flip_marked(m, EdgeRef{e}), oracle::farey::flip(tri, e), depth + 1);
      };
  walk(base_marked(torus), oracle::farey::start_triangle(), 0);
  o.detail << flips << " involutions, " << squares << " squares, " << pentagons << " pentagons, " << words
           << " Farey words";
}

void criterion5(Outcome& o) {
  for (const SurfaceSpec s : {SurfaceSpec{0, 4}, SurfaceSpec{1, 2}}) {
    const BaseContext ctx(s);
    std::mt19937_64 rng(5);
    std::size_t wd = 0, wd_fail = 0, natural = 0, natural_fail = 0, folded = 0, func = 0, func_fail = 0,
                inverse_pairs = 0, inconclusive = 0;
    for (int k = 0; k < 20; ++k) {
      const auto phi = random_mapping_class(ctx, 4, rng);
      const auto home = random_vertex(ctx, k % 3, rng);
      for (int e = 0; e < home.shape.num_edges(); ++e) {
        const auto r = check_well_defined(ctx, phi, home.keys[e], home, 10, rng);
        ++wd;
        wd_fail += !r.passed;
        inconclusive += r.inconclusive;
      }
      for (int w = 0; w < 3; ++w) {
        auto delta = random_vertex(ctx, 1 + (k + w) % 4, rng);
        for (int t = 0; t < 20 && exchangeable_edges(delta.shape).size() == static_cast<std::size_t>(delta.shape.num_edges()); ++t) {
          delta = random_vertex(ctx, 1 + t % 4, rng);
        }
        const auto r = check_naturality(ctx, phi, delta);
        ++natural;
        natural_fail += !r.passed;
        folded += r.detours > 0;
      }
      const auto psi = random_mapping_class(ctx, 4, rng);
      for (const auto& [a, b] : {std::pair{phi, psi}, std::pair{phi, inverse(ctx, phi)}}) {
        const auto r = check_functorial(ctx, a, b, 10, rng);
        ++func;
        func_fail += !r.passed;
      }
      ++inverse_pairs;
    }
    o.require(wd_fail == 0, "well-definedness");
    o.require(natural_fail == 0, "naturality");
    o.require(func_fail == 0, "functoriality");
    o.require(folded >= 5, "at least 5 naturality cases with a folded edge");
    o.require(inconclusive < wd, "some conclusive well-definedness checks");
    o.detail << to_string(s) << ": well-defined " << wd - wd_fail << "/" << wd << " (" << inconclusive
             << " single-choice), natural " << natural - natural_fail << "/" << natural << " (" << folded
             << " with detour), functorial " << func - func_fail << "/" << func << " (" << inverse_pairs
             << " inverse pairs); ";
  }
}

void criterion6(Outcome& o) {
  std::size_t fixtures = 0;
  std::size_t steps = 0;
  std::set<SurgeryKind> kinds;
  for (const SurfaceSpec s : {SurfaceSpec{0, 4}, SurfaceSpec{1, 2}, SurfaceSpec{0, 5}}) {
    const BaseContext ctx(s);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
      const auto f = random_surgery_fixture(ctx, 2, 6, rng);
      o.require(f.has_value(), "fixture found");
      if (!f) continue;
      std::size_t bad = count_non_exchangeable(f->path, f->arc);
      o.require(bad > 0, "fixture has a bad vertex");
      const auto r = make_exchangeable_path(f->path, f->arc);
      o.require(vertex_key(r.path.front()) == vertex_key(f->path.front()), "start unchanged");
      o.require(vertex_key(r.path.back()) == vertex_key(f->path.back()), "end unchanged");
      for (const auto& m : r.path) o.require(arc_exchangeable(m, f->arc), "arc exchangeable everywhere");
      for (std::size_t k = 1; k < r.path.size(); ++k) o.require(adjacent(r.path[k - 1], r.path[k]), "path edges");
      for (const auto& st : r.steps) {
        o.require(st.bad_before == bad && st.bad_after < bad, "monotone bad count");
        bad = st.bad_after;
        kinds.insert(st.kind);
        ++steps;
      }
      ++fixtures;
    }
  }
  o.require(fixtures >= 10, "at least 10 fixtures");
  o.detail << fixtures << " fixtures, " << steps << " steps, " << kinds.size() << " step kinds";
}

void criterion7(Outcome& o) {
  for (const SurfaceSpec s : {SurfaceSpec{1, 1}, SurfaceSpec{0, 3}, SurfaceSpec{0, 4}, SurfaceSpec{1, 2}}) {
    const auto q = build_quotient(s);
    o.require(!q.truncated, "quotient below cap");
    std::set<CanonicalKey> mine;
    for (const auto& v : q.vertices) mine.insert(v.key);
    std::set<CanonicalKey> census;
    for (const auto& g : oracle::gluings::census(s)) census.insert(canonical_key(CombTriangulation(g)));
    o.require(mine == census, "vertex set equals census for " + to_string(s));
    o.detail << to_string(s) << ":" << mine.size() << " ";
  }
}

void criterion8(Outcome& o) {
  DeltaScanOptions opts;
  opts.seed = 8;
  const auto scan = delta_scan(BaseContext({0, 4}), 6, opts);
  o.require(!scan.truncated, "scan complete");
  o.require(scan.per_radius[0].max_delta.twice == 0 && scan.per_radius[1].max_delta.twice == 0, "delta 0 at r<=1");
  bool reached = false;
  for (std::size_t r = 1; r < scan.per_radius.size(); ++r) {
    o.require(scan.per_radius[r - 1].max_delta <= scan.per_radius[r].max_delta, "non-decreasing");
    reached = reached || scan.per_radius[r].max_delta.twice >= 2;
  }
  o.require(reached, "delta >= 1 by r=6");
  o.detail << "(0,4) delta by radius:";
  for (const auto& e : scan.per_radius) o.detail << " " << e.max_delta.to_string();

  const auto torus = delta_scan(BaseContext({1, 1}), 6, opts);
  for (const auto& e : torus.per_radius) o.require(e.max_delta.twice == 0, "(1,1) delta zero");

  std::size_t grids = 0;
  for (const SurfaceSpec s : {SurfaceSpec{0, 4}, SurfaceSpec{0, 5}, SurfaceSpec{1, 2}, SurfaceSpec{2, 1}}) {
    const BaseContext ctx(s);
    const auto base = base_marked(ctx);
    for (const EdgeRef p : exchangeable_edges(base.shape)) {
      for (const EdgeRef q : exchangeable_edges(base.shape)) {
        if (p.id >= q.id || triangles_of(base.shape, p, q).size() != 4) continue;
        o.require(flat_witness(ctx, {p.id}, {q.id}, 3, 3).all_commute(), "flat grid commutes");
        ++grids;
      }
    }
  }
  o.require(grids > 0, "some flat grid tested");
  o.detail << "; (1,1) delta 0; " << grids << " flat grids commute";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    void (*run)(Outcome&);
  };
  const Criterion criteria[] = {
      {1, "thrice-punctured sphere tripod", 1, criterion1},
      {2, "once-punctured torus tree", 30, criterion2},
      {3, "cycle audit", 300, criterion3},
      {4, "coordinate soundness", 300, criterion4},
      {5, "arc map sweeps", 600, criterion5},
      {6, "path surgery", 60, criterion6},
      {7, "quotient census", 120, criterion7},
      {8, "non-hyperbolicity evidence", 600, criterion8},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs < c.budget_s, "time budget");
    failed += !o.passed;
    std::printf("criterion %d %-32s %s  %.2fs/%.0fs  %s\n", c.id, c.name, o.passed ? "PASS" : "FAIL", secs,
                c.budget_s, o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
