#include "doctest.h"

#include "flipgraph/explorer.hpp"
#include "flipgraph/mcg.hpp"
#include "support.hpp"

using namespace flipgraph;

namespace {

const std::vector<SurfaceSpec> kSweep{{0, 4}, {1, 2}};

}  // namespace

TEST_CASE("identity acts trivially") {
  std::mt19937_64 rng(1);
  for (const auto& s : testing::small_surfaces()) {
    const BaseContext ctx(s);
    const auto id = identity_class(ctx);
    CHECK(id.word.empty());
    CHECK(id.orientation_preserving());
    for (int i = 0; i < 5; ++i) {
      const auto m = testing::random_walk(base_marked(ctx), 4, rng);
      CHECK(vertex_key(apply_to_vertex(ctx, id, m)) == vertex_key(m));
      for (const EdgeRef e : exchangeable_edges(m.shape)) CHECK(tilde_arc_map(ctx, id, m.key(e), m) == m.key(e));
    }
  }
}

TEST_CASE("base symmetries permute base arcs by their edge map") {
  for (const auto& s : testing::small_surfaces()) {
    CAPTURE(to_string(s));
    const BaseContext ctx(s);
    const auto base = base_marked(ctx);
    for (const auto& iso : isomorphisms(ctx.base(), ctx.base())) {
      const auto sigma = make_mapping_class(ctx, {}, iso);
      CHECK(vertex_key(apply_to_vertex(ctx, sigma, base)) == vertex_key(base));
      for (int e = 0; e < ctx.num_edges(); ++e) {
        CHECK(tilde_arc_map(ctx, sigma, base.key(EdgeRef{e}), base) == base.key(EdgeRef{sigma.edge_image[e]}));
      }
    }
  }
  const BaseContext ctx({0, 4});
  CHECK_THROWS_AS(make_mapping_class(ctx, {0}, identity_isomorphism(ctx.base())), Error);
}

TEST_CASE("the action is well defined on vertices and preserves adjacency") {
  std::mt19937_64 rng(2);
  for (const auto& s : testing::small_surfaces()) {
    CAPTURE(to_string(s));
    const BaseContext ctx(s);
    for (int i = 0; i < 5; ++i) {
      const auto phi = random_mapping_class(ctx, 4, rng);
      const auto m = testing::random_walk(base_marked(ctx), 4, rng);
      const auto image = apply_to_vertex(ctx, phi, m);
      CHECK_NOTHROW(check_marking(image));
      CHECK(vertex_key(apply_to_vertex(ctx, phi, m)) == vertex_key(image));
      for (const EdgeRef e : exchangeable_edges(m.shape)) {
        // A longer word to the same vertex.
        auto detour = m;
        detour.word.push_back(e.id);
        detour.word.push_back(e.id);
        detour = replay(base_marked(ctx), detour.word);
        CHECK(vertex_key(apply_to_vertex(ctx, phi, detour)) == vertex_key(image));
        CHECK(adjacent(apply_to_vertex(ctx, phi, flip_marked(m, e)), image));
      }
    }
  }
}

TEST_CASE("compose and inverse agree with the action") {
  std::mt19937_64 rng(3);
  for (const auto& s : testing::small_surfaces()) {
    CAPTURE(to_string(s));
    const BaseContext ctx(s);
    for (int i = 0; i < 5; ++i) {
      const auto phi = random_mapping_class(ctx, 3, rng);
      const auto psi = random_mapping_class(ctx, 3, rng);
      const auto m = testing::random_walk(base_marked(ctx), 3, rng);
      const auto both = compose(ctx, phi, psi);
      CHECK(both.orientation_preserving() == (phi.orientation_preserving() == psi.orientation_preserving()));
      CHECK(vertex_key(apply_to_vertex(ctx, both, m)) ==
            vertex_key(apply_to_vertex(ctx, phi, apply_to_vertex(ctx, psi, m))));
      const auto inv = inverse(ctx, phi);
      CHECK(vertex_key(apply_to_vertex(ctx, inv, apply_to_vertex(ctx, phi, m))) == vertex_key(m));
      CHECK(vertex_key(apply_to_vertex(ctx, phi, apply_to_vertex(ctx, inv, m))) == vertex_key(m));
    }
  }
}

TEST_CASE("arc map sweep: well defined, natural and functorial") {
  for (const auto& s : kSweep) {
    CAPTURE(to_string(s));
    const BaseContext ctx(s);
    std::mt19937_64 rng(2025);
    std::size_t comparisons = 0;
    std::size_t detours = 0;
    std::size_t conclusive = 0;
    for (int k = 0; k < 20; ++k) {
      const auto phi = random_mapping_class(ctx, 4, rng);
      const auto home = testing::random_walk(base_marked(ctx), k % 3, rng);
      ArcMap map;
      for (int e = 0; e < home.shape.num_edges(); ++e) {
        const auto r = check_well_defined(ctx, phi, home.keys[e], home, 10, rng);
        CHECK_MESSAGE(r.passed, (r.witnesses.empty() ? std::string() : r.witnesses.front()));
        conclusive += !r.inconclusive;
        comparisons += r.comparisons;
        if (is_exchangeable(home.shape, EdgeRef{e})) {
          CHECK_NOTHROW(map.record(home.keys[e], tilde_arc_map(ctx, phi, home.keys[e], home)));
        }
      }
      for (int w = 0; w < 3; ++w) {
        const auto delta = testing::random_walk(base_marked(ctx), 1 + w, rng);
        const auto r = check_naturality(ctx, phi, delta);
        CHECK(r.passed);
        detours += r.detours;
      }
      const auto psi = random_mapping_class(ctx, 4, rng);
      CHECK(check_functorial(ctx, phi, psi, 10, rng).passed);
      CHECK(check_functorial(ctx, phi, inverse(ctx, phi), 10, rng).passed);
      CHECK(check_functorial(ctx, inverse(ctx, phi), phi, 10, rng).passed);
    }
    CHECK(conclusive > 100);
    CHECK(comparisons > 1000);
    CHECK(detours >= 5);
  }
}

TEST_CASE("nontrivial mapping classes move the base vertex and keep arcs apart") {
  for (const auto& s : kSweep) {
    const BaseContext ctx(s);
    const auto base = base_marked(ctx);
    const auto ball = build_ball(ctx, 2);
    std::mt19937_64 rng(4);
    int tested = 0;
    while (tested < 50) {
      const auto phi = random_mapping_class(ctx, 5, rng);
      if (vertex_key(replay(base, phi.word)) == vertex_key(base)) continue;
      ++tested;
      CHECK(vertex_key(apply_to_vertex(ctx, phi, base)) != vertex_key(base));
      ArcMap map;
      for (const auto& v : ball.vertices) {
        for (const EdgeRef e : exchangeable_edges(v.marked.shape)) {
          map.record(v.marked.key(e), tilde_arc_map(ctx, phi, v.marked.key(e), v.marked));
        }
      }
      CHECK(map.size() > static_cast<std::size_t>(ctx.num_edges()));
    }
  }
}

TEST_CASE("orientation-reversing classes act bijectively on arcs") {
  for (const auto& s : kSweep) {
    const BaseContext ctx(s);
    std::mt19937_64 rng(5);
    int tested = 0;
    while (tested < 10) {
      const auto phi = random_mapping_class(ctx, 3, rng);
      if (phi.orientation_preserving()) continue;
      ++tested;
      const auto inv = inverse(ctx, phi);
      CHECK_FALSE(inv.orientation_preserving());
      ArcMap map;
      for (int i = 0; i < 10; ++i) {
        const auto delta = testing::random_walk(base_marked(ctx), i % 4, rng);
        const auto image = apply_to_vertex(ctx, phi, delta);
        for (const EdgeRef e : exchangeable_edges(delta.shape)) {
          const auto to = tilde_arc_map(ctx, phi, delta.key(e), delta);
          map.record(delta.key(e), to);
          CHECK(image.contains(to));
          CHECK(tilde_arc_map(ctx, inv, to, image) == delta.key(e));
        }
      }
    }
  }
}

TEST_CASE("arc map rejects conflicts and collisions") {
  const ArcKey a{{-1, 0}};
  const ArcKey b{{0, -1}};
  const ArcKey c{{1, 1}};
  ArcMap map;
  map.record(a, b);
  CHECK_NOTHROW(map.record(a, b));
  CHECK_THROWS_AS(map.record(a, c), InvariantViolation);
  CHECK_THROWS_AS(map.record(c, b), InvariantViolation);
  CHECK(map.lookup(a) == b);
  CHECK_FALSE(map.lookup(c).has_value());
}

TEST_CASE("surgery makes an arc exchangeable along the whole path") {
  std::map<SurgeryKind, int> kinds;
  int fixtures = 0;
  int multi_bad = 0;
  for (const SurfaceSpec s : {SurfaceSpec{0, 4}, SurfaceSpec{1, 2}, SurfaceSpec{0, 5}}) {
    CAPTURE(to_string(s));
    const BaseContext ctx(s);
    std::mt19937_64 rng(6);
    for (int i = 0; i < 20; ++i) {
      const auto f = random_surgery_fixture(ctx, 3, 6, rng);
      REQUIRE(f.has_value());
      const std::size_t bad = count_non_exchangeable(f->path, f->arc);
      REQUIRE(bad >= 1);
      multi_bad += bad >= 2;
      const auto r = make_exchangeable_path(f->path, f->arc);
      CHECK(count_non_exchangeable(r.path, f->arc) == 0);
      CHECK(vertex_key(r.path.front()) == vertex_key(f->path.front()));
      CHECK(vertex_key(r.path.back()) == vertex_key(f->path.back()));
      for (std::size_t k = 1; k < r.path.size(); ++k) CHECK(adjacent(r.path[k - 1], r.path[k]));
      std::size_t prev = bad;
      for (const auto& step : r.steps) {
        CHECK(step.bad_before == prev);
        CHECK(step.bad_after < step.bad_before);
        prev = step.bad_after;
        ++kinds[step.kind];
      }
      CHECK(prev == 0);
      ++fixtures;
    }
  }
  CHECK(fixtures >= 10);
  CHECK(multi_bad > 0);
  CHECK(kinds[SurgeryKind::pentagon] > 0);
  CHECK(kinds[SurgeryKind::square] > 0);
  CHECK(kinds[SurgeryKind::backtrack] > 0);
}

TEST_CASE("a single bad vertex between two good ones is a backtrack") {
  // Making the arc non-exchangeable folds it, and only flipping its dual
  // edge back unfolds it.
  const BaseContext ctx({0, 4});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10; ++i) {
    const auto f = random_surgery_fixture(ctx, 2, 2, rng);
    REQUIRE(f.has_value());
    REQUIRE(f->path.size() == 3);
    CHECK(vertex_key(f->path[0]) == vertex_key(f->path[2]));
    const auto r = make_exchangeable_path(f->path, f->arc);
    REQUIRE(r.steps.size() == 1);
    CHECK(r.steps[0].kind == SurgeryKind::backtrack);
    CHECK(r.path.size() == 1);
  }
}

TEST_CASE("surgery input validation") {
  const BaseContext ctx({0, 4});
  const auto base = base_marked(ctx);
  const auto& a = base.key(EdgeRef{0});
  CHECK_THROWS_AS(make_exchangeable_path({}, a), Error);
  CHECK_THROWS_AS(make_exchangeable_path({base, flip_marked(base, EdgeRef{0})}, a), Error);
  const auto far = flip_marked(flip_marked(base, EdgeRef{1}), EdgeRef{2});
  CHECK_THROWS_AS(make_exchangeable_path({base, far}, a), Error);
  std::mt19937_64 rng(8);
  CHECK_THROWS_AS(random_surgery_fixture(ctx, 1, 3, rng), Error);
  CHECK(make_exchangeable_path({base}, a).steps.empty());
}
