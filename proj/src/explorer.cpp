#include "flipgraph/explorer.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "flipgraph/parallel.hpp"

namespace flipgraph {

int FlipGraphBall::index_of(const VertexKey& k) const {
  const auto it = index.find(k);
  return it == index.end() ? -1 : it->second;
}

int QuotientGraph::index_of(const CanonicalKey& k) const {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i].key == k) return static_cast<int>(i);
  }
  return -1;
}

namespace {

struct Neighbour {
  MarkedTriangulation marked;
  VertexKey key;
  int edge = 0;
};

std::vector<Neighbour> expand(const MarkedTriangulation& m) {
  std::vector<Neighbour> out;
  for (const EdgeRef e : exchangeable_edges(m.shape)) {
    Neighbour n;
    n.marked = flip_marked(m, e);
    n.key = vertex_key(n.marked);
    n.edge = e.id;
    out.push_back(std::move(n));
  }
  return out;
}

int add_vertex(FlipGraphBall& ball, MarkedTriangulation m, VertexKey key, int depth) {
  const int id = static_cast<int>(ball.vertices.size());
  ball.index.emplace(key, id);
  ball.vertices.push_back({std::move(m), std::move(key), depth});
  ball.adjacency.emplace_back();
  return id;
}

}  // namespace

FlipGraphBall build_ball(const BaseContext& ctx, int radius, std::size_t cap, unsigned threads) {
  if (radius < 0) throw Error("radius must be non-negative");
  if (cap == 0) throw Error("vertex cap must be positive");
  FlipGraphBall ball;
  ball.radius = radius;
  auto base = base_marked(ctx);
  ball.center = vertex_key(base);
  add_vertex(ball, std::move(base), ball.center, 0);

  std::vector<int> frontier{0};
  for (int depth = 0; depth < radius; ++depth) {
    std::vector<std::vector<Neighbour>> found(frontier.size());
    parallel_for(frontier.size(), threads,
                 [&](std::size_t i) { found[i] = expand(ball.vertices[frontier[i]].marked); });

    std::map<VertexKey, const Neighbour*> fresh;
    for (const auto& list : found) {
      for (const auto& n : list) {
        if (ball.index.contains(n.key)) continue;
        fresh.emplace(n.key, &n);  // keeps the first discovery
      }
    }
    if (ball.vertices.size() + fresh.size() > cap) {
      ball.truncated = true;
      break;
    }
    std::vector<int> next;
    next.reserve(fresh.size());
    for (auto& [key, n] : fresh) next.push_back(add_vertex(ball, n->marked, key, depth + 1));

    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const int u = frontier[i];
      for (const auto& n : found[i]) {
        const int w = ball.index.at(n.key);
        if (w == u) throw InvariantViolation("flip produced a self-loop");
        const int du = ball.vertices[u].depth;
        const int dw = ball.vertices[w].depth;
        if (dw < du || (dw == du && w < u)) continue;  // recorded from the other end
        ball.edges.push_back({u, w, ball.vertices[u].marked.keys[n.edge], n.marked.keys[n.edge]});
        ball.adjacency[u].push_back(w);
        ball.adjacency[w].push_back(u);
      }
    }
    ball.completed_depth = depth;
    frontier = std::move(next);
  }
  for (auto& adj : ball.adjacency) std::sort(adj.begin(), adj.end());
  return ball;
}

std::vector<std::vector<int>> edge_orbits(const CombTriangulation& t) {
  const int n = t.num_edges();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& iso : isomorphisms(t, t)) {
    const auto em = iso.edge_map(t, t);
    for (int e = 0; e < n; ++e) parent[find(e)] = find(em[e]);
  }
  std::map<int, std::vector<int>> groups;
  for (int e = 0; e < n; ++e) groups[find(e)].push_back(e);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

QuotientGraph build_quotient(const SurfaceSpec& s, std::size_t cap) {
  const SurfaceSpec spec = SurfaceSpec::checked(s.genus, s.punctures);
  QuotientGraph q;
  q.spec = spec;
  std::map<CanonicalKey, int> index;

  auto add = [&](const CombTriangulation& t) {
    const auto cf = canonical_form(t);
    if (const auto it = index.find(cf.key); it != index.end()) return it->second;
    if (q.vertices.size() >= cap) return -1;
    QuotientVertex v;
    v.key = cf.key;
    v.representative = apply_isomorphism(t, cf.relabeling);
    const int id = static_cast<int>(q.vertices.size());
    index.emplace(cf.key, id);
    q.vertices.push_back(std::move(v));
    return id;
  };

  add(standard_triangulation(spec));
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const CombTriangulation rep = q.vertices[i].representative;
    q.vertices[i].automorphisms = isomorphisms(rep, rep).size();
    q.vertices[i].exchangeable_edges = static_cast<int>(exchangeable_edges(rep).size());
    for (const auto& orbit : edge_orbits(rep)) {
      const EdgeRef e{orbit.front()};
      if (!is_exchangeable(rep, e)) continue;
      const int to = add(flip(rep, e));
      if (to < 0) {
        q.truncated = true;
        return q;
      }
      q.edge_ends.push_back({static_cast<int>(i), to, e.id, static_cast<int>(orbit.size())});
    }
  }
  return q;
}

}  // namespace flipgraph
