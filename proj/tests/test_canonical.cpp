#include "doctest.h"

#include "flipgraph/canonical.hpp"
#include "support.hpp"

using namespace flipgraph;

TEST_CASE("canonical key is invariant under relabeling and mirroring") {
  std::mt19937_64 rng(2024);
  for (const auto& s : testing::small_surfaces()) {
    CAPTURE(to_string(s));
    const auto t = testing::random_walk(standard_triangulation(s), 6, rng);
    const auto key = canonical_key(t);
    const auto rep = canonical_representative(t);
    for (int i = 0; i < 100; ++i) {
      const auto r = relabel(t, testing::random_relabeling(t.num_triangles(), rng));
      REQUIRE(canonical_key(r) == key);
      CHECK(std::ranges::equal(canonical_representative(r).gluing(), rep.gluing()));
    }
    CHECK(canonical_key(mirror(t)) == key);
  }
}

TEST_CASE("canonical form maps the input onto the representative") {
  std::mt19937_64 rng(8);
  for (const auto& s : testing::small_surfaces()) {
    const auto t = testing::random_walk(standard_triangulation(s), 3, rng);
    const auto cf = canonical_form(t);
    const auto rep = apply_isomorphism(t, cf.relabeling);
    CHECK(is_isomorphism(t, rep, cf.relabeling));
    CHECK(canonical_key(rep) == cf.key);
    CHECK(rep == canonical_representative(t));
  }
}

TEST_CASE("canonical key separates different shapes") {
  // The (0,3) tripod: center (no folded triangle) and leaves (two folded ones).
  const auto center = standard_triangulation({0, 3});
  const auto leaf = flip(center, EdgeRef{0});
  CHECK(canonical_key(center) != canonical_key(leaf));
  // Leaves are all the same shape.
  CHECK(canonical_key(flip(center, EdgeRef{1})) == canonical_key(leaf));
  CHECK(canonical_key(flip(center, EdgeRef{2})) == canonical_key(leaf));
}

TEST_CASE("hex encoding round-trips") {
  const auto key = canonical_key(standard_triangulation({1, 2}));
  const auto hex = key.hex();
  CHECK(hex.size() == 2 * key.bytes.size());
  CHECK(std::ranges::all_of(hex, [](char c) { return std::isdigit(c) || (c >= 'a' && c <= 'f'); }));
  CHECK(CanonicalKey::from_hex(hex) == key);
  CHECK_THROWS_AS(CanonicalKey::from_hex("abc"), Error);
  CHECK_THROWS_AS(CanonicalKey::from_hex("zz"), Error);
}

TEST_CASE("once-punctured torus has 6 rotations and 12 symmetries in all") {
  const auto t = standard_triangulation({1, 1});
  const auto all = isomorphisms(t, t);
  CHECK(all.size() == 12);
  CHECK(std::ranges::count_if(all, [](const Isomorphism& i) { return i.orientation_preserving; }) == 6);
  // Orientation-preserving ones are listed first.
  CHECK(all.front().orientation_preserving);
  CHECK_FALSE(all.back().orientation_preserving);
}

TEST_CASE("isomorphisms compose, invert and preserve gluings") {
  std::mt19937_64 rng(99);
  for (const auto& s : testing::small_surfaces()) {
    CAPTURE(to_string(s));
    const auto t = testing::random_walk(standard_triangulation(s), 4, rng);
    const auto r = relabel(t, testing::random_relabeling(t.num_triangles(), rng));
    const auto isos = isomorphisms(t, r);
    REQUIRE_FALSE(isos.empty());
    CHECK(isos.size() == isomorphisms(t, t).size());
    for (const auto& iso : isos) {
      CHECK(is_isomorphism(t, r, iso));
      const auto back = inverse(iso);
      CHECK(is_isomorphism(r, t, back));
      CHECK(compose(back, iso) == identity_isomorphism(t));
      const auto em = iso.edge_map(t, r);
      for (int x = 0; x < t.num_slots(); ++x) CHECK(r.edge_of(iso.slot_map[x]) == em[t.edge_of(x)]);
    }
    CHECK(isomorphisms(t, mirror(t)).size() == isos.size());
    CHECK_THROWS_AS(isomorphisms(t, standard_triangulation({2, 3})), Error);
  }
}

TEST_CASE("non-isomorphic triangulations have no isomorphisms") {
  const auto center = standard_triangulation({0, 3});
  CHECK(isomorphisms(center, flip(center, EdgeRef{0})).empty());
}
