#include "flipgraph/mcg.hpp"

#include <algorithm>
#include <set>

namespace flipgraph {

namespace {

std::vector<int> invert_permutation(const std::vector<int>& p) {
  std::vector<int> out(p.size(), -1);
  for (std::size_t i = 0; i < p.size(); ++i) out.at(p[i]) = static_cast<int>(i);
  return out;
}

std::vector<int> push_word(const std::vector<int>& perm, const std::vector<int>& word) {
  std::vector<int> out;
  out.reserve(word.size());
  for (int e : word) out.push_back(perm.at(e));
  return out;
}

// An isomorphism terminal -> base whose edge map inverts `image`, preferring
// the requested orientation. Edge-fixing automorphisms act trivially on arcs,
// so any match induces the same action.
Isomorphism find_iso(const CombTriangulation& terminal, const CombTriangulation& base,
                     const std::vector<int>& image, bool orientation_preserving) {
  const auto wanted = invert_permutation(image);
  std::optional<Isomorphism> fallback;
  for (auto& iso : isomorphisms(terminal, base)) {
    if (iso.edge_map(terminal, base) != wanted) continue;
    if (iso.orientation_preserving == orientation_preserving) return iso;
    if (!fallback) fallback = iso;
  }
  if (!fallback) throw InvariantViolation("no isomorphism realizes the composed edge map");
  return *fallback;
}

std::string describe(const MarkedTriangulation& m) { return vertex_key(m).digest(); }

}  // namespace

MappingClass make_mapping_class(const BaseContext& ctx, std::vector<int> word, Isomorphism iso) {
  const auto terminal = replay(base_marked(ctx), word);
  if (!is_isomorphism(terminal.shape, ctx.base(), iso)) {
    throw Error("iso does not map the word's terminal shape onto the base shape");
  }
  MappingClass phi;
  phi.edge_image = invert_permutation(iso.edge_map(terminal.shape, ctx.base()));
  phi.word = std::move(word);
  phi.iso = std::move(iso);
  return phi;
}

MappingClass identity_class(const BaseContext& ctx) {
  return make_mapping_class(ctx, {}, identity_isomorphism(ctx.base()));
}

MappingClass compose(const BaseContext& ctx, const MappingClass& phi, const MappingClass& psi) {
  auto word = phi.word;
  for (int e : push_word(phi.edge_image, psi.word)) word.push_back(e);
  std::vector<int> image(psi.edge_image.size());
  for (std::size_t e = 0; e < image.size(); ++e) image[e] = phi.edge_image[psi.edge_image[e]];
  const auto terminal = replay(base_marked(ctx), word).shape;
  const bool orientation = phi.orientation_preserving() == psi.orientation_preserving();
  return make_mapping_class(ctx, std::move(word), find_iso(terminal, ctx.base(), image, orientation));
}

MappingClass inverse(const BaseContext& ctx, const MappingClass& phi) {
  const auto image = invert_permutation(phi.edge_image);
  auto word = push_word(image, phi.word);
  std::reverse(word.begin(), word.end());
  const auto terminal = replay(base_marked(ctx), word).shape;
  return make_mapping_class(ctx, std::move(word),
                            find_iso(terminal, ctx.base(), image, phi.orientation_preserving()));
}

MappingClass random_mapping_class(const BaseContext& ctx, int walk_length, std::mt19937_64& rng,
                                  bool allow_orientation_reversing) {
  if (walk_length < 0) throw Error("walk length must be non-negative");
  const auto base = base_marked(ctx);
  for (int attempt = 0; attempt < 10'000; ++attempt) {
    // Some lengths never return to the base shape; lengthen slowly.
    const int length = walk_length + attempt / 50;
    std::vector<int> word;
    CombTriangulation shape = base.shape;
    for (int i = 0; i < length; ++i) {
      const auto options = exchangeable_edges(shape);
      const EdgeRef e = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
      shape = flip(shape, e);
      word.push_back(e.id);
    }
    auto isos = isomorphisms(shape, base.shape);
    if (!allow_orientation_reversing) {
      std::erase_if(isos, [](const Isomorphism& i) { return !i.orientation_preserving; });
    }
    if (isos.empty()) continue;
    auto iso = isos[std::uniform_int_distribution<std::size_t>(0, isos.size() - 1)(rng)];
    return make_mapping_class(ctx, std::move(word), std::move(iso));
  }
  throw Error("no walk of length " + std::to_string(walk_length) + " returned to the base shape");
}

MarkedTriangulation apply_to_vertex(const BaseContext& ctx, const MappingClass& phi,
                                    const MarkedTriangulation& m) {
  const auto terminal = replay(base_marked(ctx), phi.word);
  auto out = replay(terminal, push_word(phi.edge_image, m.word));
  check_marking(out);
  return out;
}

ArcKey tilde_arc_map(const BaseContext& ctx, const MappingClass& phi, const ArcKey& a,
                     const MarkedTriangulation& delta) {
  const int e = delta.find_edge(a);
  if (e < 0) throw Error("arc " + a.to_string() + " is not an edge of the triangulation");
  if (!is_exchangeable(delta.shape, EdgeRef{e})) {
    throw Error("arc " + a.to_string() + " is not exchangeable in the triangulation");
  }
  const auto image = apply_to_vertex(ctx, phi, delta);
  const auto image_flipped = apply_to_vertex(ctx, phi, flip_marked(delta, EdgeRef{e}));
  return diff(image, image_flipped);
}

void ArcMap::record(const ArcKey& from, const ArcKey& to) {
  if (const auto it = forward_.find(from); it != forward_.end()) {
    if (it->second != to) {
      throw InvariantViolation("arc map sends " + from.to_string() + " to both " +
                               it->second.to_string() + " and " + to.to_string());
    }
    return;
  }
  if (const auto it = backward_.find(to); it != backward_.end()) {
    throw InvariantViolation("arc map is not injective: " + it->second.to_string() + " and " +
                             from.to_string() + " both go to " + to.to_string());
  }
  forward_.emplace(from, to);
  backward_.emplace(to, from);
}

std::optional<ArcKey> ArcMap::lookup(const ArcKey& from) const {
  const auto it = forward_.find(from);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

CheckReport check_well_defined(const BaseContext& ctx, const MappingClass& phi, const ArcKey& a,
                               const MarkedTriangulation& home, int trials, std::mt19937_64& rng) {
  if (trials < 2) throw Error("well-definedness needs at least 2 trials");
  const int edge = home.find_edge(a);
  if (edge < 0) throw Error("home triangulation does not contain the arc");
  CheckReport report;
  report.name = "well_defined";

  std::set<VertexKey> seen;
  std::optional<ArcKey> first;
  std::uniform_int_distribution<int> length(0, 6);
  for (int attempt = 0; attempt < 50 * trials && static_cast<int>(seen.size()) < trials; ++attempt) {
    auto cur = home;
    for (int steps = length(rng); steps > 0; --steps) {
      auto options = exchangeable_edges(cur.shape);
      std::erase_if(options, [&](EdgeRef e) { return e.id == edge; });
      if (options.empty()) break;
      cur = flip_marked(cur, options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    if (!is_exchangeable(cur.shape, EdgeRef{edge})) continue;
    if (!seen.insert(vertex_key(cur)).second) continue;
    const auto value = tilde_arc_map(ctx, phi, a, cur);
    ++report.comparisons;
    if (!first) {
      first = value;
    } else if (value != *first) {
      report.passed = false;
      report.witnesses.push_back("triangulation " + describe(cur) + " gives " + value.to_string() +
                                 " instead of " + first->to_string());
    }
  }
  if (seen.size() < 2) report.inconclusive = true;
  return report;
}

CheckReport check_naturality(const BaseContext& ctx, const MappingClass& phi,
                             const MarkedTriangulation& delta) {
  CheckReport report;
  report.name = "naturality";
  std::vector<ArcKey> images;
  for (int e = 0; e < delta.shape.num_edges(); ++e) {
    const ArcKey& c = delta.keys[e];
    if (is_exchangeable(delta.shape, EdgeRef{e})) {
      images.push_back(tilde_arc_map(ctx, phi, c, delta));
    } else {
      // Flip the dual edge first; c becomes exchangeable there.
      const auto detour = flip_marked(delta, dual_edge(delta.shape, EdgeRef{e}));
      images.push_back(tilde_arc_map(ctx, phi, c, detour));
      ++report.detours;
    }
    ++report.comparisons;
  }
  auto expected = vertex_key(apply_to_vertex(ctx, phi, delta)).arcs;
  std::sort(images.begin(), images.end());
  if (images != expected) {
    report.passed = false;
    report.witnesses.push_back("triangulation " + describe(delta) +
                               ": tilde images differ from the image triangulation");
  }
  return report;
}

CheckReport check_functorial(const BaseContext& ctx, const MappingClass& phi,
                             const MappingClass& psi, int samples, std::mt19937_64& rng) {
  CheckReport report;
  report.name = "functorial";
  const auto both = compose(ctx, phi, psi);
  const auto base = base_marked(ctx);
  std::uniform_int_distribution<int> length(0, 4);
  for (int i = 0; i < samples; ++i) {
    auto delta = base;
    for (int steps = length(rng); steps > 0; --steps) {
      const auto options = exchangeable_edges(delta.shape);
      delta = flip_marked(delta, options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    const auto options = exchangeable_edges(delta.shape);
    const EdgeRef e = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    const ArcKey& a = delta.keys[e.id];

    const auto direct = tilde_arc_map(ctx, both, a, delta);
    const auto middle = tilde_arc_map(ctx, psi, a, delta);
    // psi(Δ) contains psi~(a) as an exchangeable edge.
    const auto stepwise = tilde_arc_map(ctx, phi, middle, apply_to_vertex(ctx, psi, delta));
    ++report.comparisons;
    if (direct != stepwise) {
      report.passed = false;
      report.witnesses.push_back("arc " + a.to_string() + " in " + describe(delta) + ": " +
                                 direct.to_string() + " vs " + stepwise.to_string());
    }
  }
  return report;
}

const char* to_string(SurgeryKind k) {
  switch (k) {
    case SurgeryKind::pentagon: return "pentagon";
    case SurgeryKind::square: return "square";
    case SurgeryKind::backtrack: return "backtrack";
  }
  return "?";
}

bool arc_exchangeable(const MarkedTriangulation& m, const ArcKey& a) {
  const int e = m.find_edge(a);
  return e >= 0 && is_exchangeable(m.shape, EdgeRef{e});
}

std::size_t count_non_exchangeable(const std::vector<MarkedTriangulation>& path, const ArcKey& a) {
  return static_cast<std::size_t>(
      std::count_if(path.begin(), path.end(), [&](const auto& m) { return !arc_exchangeable(m, a); }));
}

SurgeryResult make_exchangeable_path(std::vector<MarkedTriangulation> path, const ArcKey& a) {
  if (path.empty()) throw Error("empty path");
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (!path[i].contains(a)) throw Error("path vertex " + std::to_string(i) + " lacks the arc");
    if (i > 0 && !adjacent(path[i - 1], path[i])) {
      throw Error("path vertices " + std::to_string(i - 1) + " and " + std::to_string(i) +
                  " are not adjacent");
    }
  }
  if (!arc_exchangeable(path.front(), a) || !arc_exchangeable(path.back(), a)) {
    throw Error("the arc must be exchangeable at both ends of the path");
  }

  SurgeryResult result;
  std::size_t bad = count_non_exchangeable(path, a);
  while (bad > 0) {
    std::size_t i = 1;
    while (arc_exchangeable(path[i], a)) ++i;
    const auto& here = path[i];
    const auto& before = path[i - 1];
    const auto& after = path[i + 1];
    const EdgeRef folded{here.find_edge(a)};
    const EdgeRef star = dual_edge(here.shape, folded);
    if (here.find_edge(diff(here, before)) != star.id) {
      throw InvariantViolation("move into a folded position does not flip the dual edge");
    }
    const EdgeRef x{here.find_edge(diff(here, after))};

    SurgeryStep step;
    step.position = i;
    step.bad_before = bad;
    std::vector<MarkedTriangulation> replacement;
    if (x.id == star.id) {
      step.kind = SurgeryKind::backtrack;  // drop here and after
    } else if (share_triangle(here.shape, x, star)) {
      step.kind = SurgeryKind::pentagon;
      const auto w1 = flip_marked(here, x);
      const auto w2 = flip_marked(w1, star);
      const auto w3 = flip_marked(w2, x);
      const auto w4 = flip_marked(w3, star);
      if (vertex_key(w4) != vertex_key(before) || vertex_key(w1) != vertex_key(after)) {
        throw InvariantViolation("pentagon detour does not close up");
      }
      replacement = {w3, w2};
    } else {
      step.kind = SurgeryKind::square;
      auto corner = flip_marked(before, x);
      if (!adjacent(corner, after)) throw InvariantViolation("square detour does not close up");
      replacement = {std::move(corner)};
    }
    for (const auto& w : replacement) {
      if (!arc_exchangeable(w, a)) throw InvariantViolation("detour vertex does not expose the arc");
    }

    std::vector<MarkedTriangulation> next(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i));
    for (auto& w : replacement) next.push_back(std::move(w));
    const std::size_t resume = step.kind == SurgeryKind::backtrack ? i + 2 : i + 1;
    for (std::size_t k = resume; k < path.size(); ++k) next.push_back(std::move(path[k]));
    path = std::move(next);

    step.bad_after = count_non_exchangeable(path, a);
    if (step.bad_after >= bad) throw InvariantViolation("surgery step did not reduce the bad count");
    bad = step.bad_after;
    result.steps.push_back(step);
  }
  result.path = std::move(path);
  return result;
}

std::optional<SurgeryFixture> random_surgery_fixture(const BaseContext& ctx, int min_length,
                                                     int max_length, std::mt19937_64& rng,
                                                     int attempts) {
  if (min_length < 2 || max_length < min_length) throw Error("fixture lengths must satisfy 2 <= min <= max");
  auto pick = [&](const std::vector<EdgeRef>& v) {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  const auto base = base_marked(ctx);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    auto start = base;
    for (int k = std::uniform_int_distribution<int>(0, 4)(rng); k > 0; --k) {
      start = flip_marked(start, pick(exchangeable_edges(start.shape)));
    }
    const EdgeRef edge = pick(exchangeable_edges(start.shape));
    SurgeryFixture f{{start}, start.keys[edge.id]};
    for (int k = std::uniform_int_distribution<int>(min_length, max_length)(rng); k > 0; --k) {
      auto options = exchangeable_edges(f.path.back().shape);
      std::erase_if(options, [&](EdgeRef e) { return e.id == edge.id; });
      if (options.empty()) break;
      f.path.push_back(flip_marked(f.path.back(), pick(options)));
    }
    if (!arc_exchangeable(f.path.back(), f.arc)) continue;
    if (count_non_exchangeable(f.path, f.arc) == 0) continue;
    return f;
  }
  return std::nullopt;
}

}  // namespace flipgraph
