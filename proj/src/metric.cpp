#include "flipgraph/metric.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <unordered_map>

#include "flipgraph/parallel.hpp"

namespace flipgraph {

namespace {

std::vector<int> bfs(const FlipGraphBall& ball, int source) {
  std::vector<int> dist(ball.size(), -1);
  std::deque<int> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int w : ball.adjacency[u]) {
      if (dist[w] >= 0) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

}  // namespace

DistanceTable::DistanceTable(const FlipGraphBall& ball, std::vector<int> sources, unsigned threads)
    : ball_(&ball), sources_(std::move(sources)), row_of_(ball.size(), -1), rows_(sources_.size()) {
  for (std::size_t i = 0; i < sources_.size(); ++i) {
    const int s = sources_[i];
    if (s < 0 || s >= static_cast<int>(ball.size())) throw Error("source outside the ball");
    if (row_of_[s] >= 0) throw Error("repeated source " + std::to_string(s));
    row_of_[s] = static_cast<int>(i);
  }
  parallel_for(sources_.size(), threads, [&](std::size_t i) { rows_[i] = bfs(ball, sources_[i]); });
}

int DistanceTable::distance(int u, int v) const {
  if (row_of_.at(u) >= 0) return rows_[row_of_[u]].at(v);
  if (row_of_.at(v) >= 0) return rows_[row_of_[v]].at(u);
  throw Error("neither vertex is a BFS source");
}

bool DistanceTable::certified(int u, int v) const {
  const int d = distance(u, v);
  if (d < 0) return false;
  const int depths = ball_->vertices[u].depth + ball_->vertices[v].depth;
  return depths + d <= 2 * ball_->certified_radius();
}

DistanceTable bfs_distances(const FlipGraphBall& ball, const std::vector<int>& sources,
                            unsigned threads) {
  return DistanceTable(ball, sources, threads);
}

std::string HalfInteger::to_string() const {
  const std::string whole = std::to_string(twice / 2);
  return twice % 2 == 0 ? whole : whole + ".5";
}

HalfInteger four_point_delta(const std::array<int, 6>& d) {
  // Pairings {01,23}, {02,13}, {03,12}.
  std::array<std::int64_t, 3> sums{d[0] + d[5], d[1] + d[4], d[2] + d[3]};
  std::sort(sums.begin(), sums.end());
  return HalfInteger{sums[2] - sums[1]};
}

HalfInteger four_point_delta(const DistanceTable& table, const std::array<int, 4>& q) {
  std::array<int, 6> d{};
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!table.certified(q[i], q[j])) throw Error("quadruple not certified");
      d[k++] = table.distance(q[i], q[j]);
    }
  }
  return four_point_delta(d);
}

namespace {

struct Evaluator {
  const DistanceTable& table;
  DeltaEstimate& est;

  void consider(const std::array<int, 4>& q) {
    std::array<int, 6> d{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        if (!table.certified(q[i], q[j])) {
          ++est.uncertified;
          return;
        }
        d[k++] = table.distance(q[i], q[j]);
      }
    }
    ++est.quadruples;
    const auto delta = four_point_delta(d);
    if (delta > est.max_delta) {
      est.max_delta = delta;
      est.witness = q;
    }
  }
};

}  // namespace

DeltaScan delta_scan(const FlipGraphBall& ball, const DeltaScanOptions& options) {
  DeltaScan scan;
  scan.seed = options.seed;
  scan.radius = ball.radius;
  scan.truncated = ball.truncated;
  scan.certified_radius = ball.certified_radius();

  std::vector<std::vector<int>> by_depth(ball.radius + 1);
  for (std::size_t v = 0; v < ball.size(); ++v) by_depth[ball.vertices[v].depth].push_back(static_cast<int>(v));

  std::mt19937_64 rng(options.seed);
  const bool any_sampling = ball.size() > options.exact_threshold;
  std::vector<int> sources;
  if (!any_sampling) {
    sources.resize(ball.size());
    for (std::size_t v = 0; v < ball.size(); ++v) sources[v] = static_cast<int>(v);
  } else {
    // Small radii entirely, then an equal share of every deeper level.
    std::size_t exact_prefix = 0;
    int d = 0;
    while (d <= ball.radius && exact_prefix + by_depth[d].size() <= options.exact_threshold) {
      exact_prefix += by_depth[d].size();
      ++d;
    }
    for (int e = 0; e < d; ++e) sources.insert(sources.end(), by_depth[e].begin(), by_depth[e].end());
    const int rest = ball.radius + 1 - d;
    const std::size_t share = rest > 0 ? std::max<std::size_t>(4, options.sources / rest) : 0;
    for (int e = d; e <= ball.radius; ++e) {
      auto level = by_depth[e];
      std::shuffle(level.begin(), level.end(), rng);
      level.resize(std::min(level.size(), share));
      std::sort(level.begin(), level.end());
      sources.insert(sources.end(), level.begin(), level.end());
    }
  }
  const DistanceTable table(ball, sources, options.threads);

  DeltaEstimate running;
  std::vector<int> pool;       // vertices of depth <= r
  std::vector<int> src_pool;   // sources of depth <= r
  std::set<int> source_set(sources.begin(), sources.end());
  for (int r = 0; r <= ball.radius; ++r) {
    pool.insert(pool.end(), by_depth[r].begin(), by_depth[r].end());
    for (int v : by_depth[r]) {
      if (source_set.contains(v)) src_pool.push_back(v);
    }
    DeltaEstimate est;
    est.radius = r;
    est.vertices = pool.size();
    est.max_delta = running.max_delta;
    est.witness = running.witness;
    Evaluator eval{table, est};
    if (pool.size() <= options.exact_threshold) {
      est.exact = true;
      const std::size_t n = pool.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
          for (std::size_t c = b + 1; c < n; ++c)
            for (std::size_t d = c + 1; d < n; ++d) eval.consider({pool[a], pool[b], pool[c], pool[d]});
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, src_pool.size() - 1);
      for (std::size_t s = 0; s < options.samples; ++s) {
        eval.consider({src_pool[pick(rng)], src_pool[pick(rng)], src_pool[pick(rng)], src_pool[pick(rng)]});
      }
    }
    running = est;
    scan.per_radius.push_back(est);
  }
  return scan;
}

DeltaScan delta_scan(const BaseContext& ctx, int radius, const DeltaScanOptions& options) {
  return delta_scan(build_ball(ctx, radius, options.cap, options.threads), options);
}

std::optional<int> flip_distance(const MarkedTriangulation& from, const MarkedTriangulation& to,
                                 int max_distance, std::size_t cap) {
  struct Side {
    std::unordered_map<VertexKey, int, VertexKeyHash> dist;
    std::vector<MarkedTriangulation> frontier;
    int depth = 0;
  };
  Side sides[2];
  sides[0].dist.emplace(vertex_key(from), 0);
  sides[0].frontier.push_back(from);
  sides[1].dist.emplace(vertex_key(to), 0);
  sides[1].frontier.push_back(to);
  if (sides[0].dist.contains(vertex_key(to))) return 0;

  while (sides[0].depth + sides[1].depth < max_distance) {
    // Grow the smaller frontier by one full level.
    Side& grow = sides[0].frontier.size() <= sides[1].frontier.size() ? sides[0] : sides[1];
    Side& other = &grow == &sides[0] ? sides[1] : sides[0];
    if (grow.frontier.empty()) return std::nullopt;
    std::vector<MarkedTriangulation> next;
    std::optional<int> best;
    for (const auto& m : grow.frontier) {
      for (const EdgeRef e : exchangeable_edges(m.shape)) {
        auto n = flip_marked(m, e);
        auto key = vertex_key(n);
        if (grow.dist.contains(key)) continue;
        if (const auto it = other.dist.find(key); it != other.dist.end()) {
          const int total = grow.depth + 1 + it->second;
          if (!best || total < *best) best = total;
        }
        grow.dist.emplace(std::move(key), grow.depth + 1);
        next.push_back(std::move(n));
      }
    }
    if (best) return best;
    grow.frontier = std::move(next);
    ++grow.depth;
    if (sides[0].dist.size() + sides[1].dist.size() > cap) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<int> triangle_support(const MarkedTriangulation& m, const std::vector<int>& word,
                                  int times) {
  std::set<int> tris;
  CombTriangulation shape = m.shape;
  for (int k = 0; k < times; ++k) {
    for (int e : word) {
      for (int t : incident_triangles(shape, EdgeRef{e})) tris.insert(t);
      shape = flip(shape, EdgeRef{e});
    }
  }
  return {tris.begin(), tris.end()};
}

bool FlatWitness::all_commute() const {
  for (const auto& row : commutes) {
    if (std::find(row.begin(), row.end(), false) != row.end()) return false;
  }
  return true;
}

FlatWitness flat_witness(const BaseContext& ctx, const std::vector<int>& w1,
                         const std::vector<int>& w2, int m, int n, int max_distance) {
  if (m < 0 || n < 0) throw Error("grid exponents must be non-negative");
  const auto base = base_marked(ctx);
  FlatWitness out;
  out.support1 = triangle_support(base, w1, m);
  out.support2 = triangle_support(base, w2, n);
  std::vector<int> common;
  std::set_intersection(out.support1.begin(), out.support1.end(), out.support2.begin(),
                        out.support2.end(), std::back_inserter(common));
  if (!common.empty()) throw Error("flip words do not have disjoint supports");

  auto power = [](const std::vector<int>& w, int k) {
    std::vector<int> out;
    for (int i = 0; i < k; ++i) out.insert(out.end(), w.begin(), w.end());
    return out;
  };
  out.commutes.assign(m + 1, std::vector<bool>(n + 1, false));
  out.distance.assign(m + 1, std::vector<int>(n + 1, -1));
  for (int i = 0; i <= m; ++i) {
    for (int j = 0; j <= n; ++j) {
      const auto one_first = replay(replay(base, power(w1, i)), power(w2, j));
      const auto two_first = replay(replay(base, power(w2, j)), power(w1, i));
      out.commutes[i][j] = vertex_key(one_first) == vertex_key(two_first);
      out.distance[i][j] = flip_distance(base, one_first, max_distance).value_or(-1);
    }
  }
  return out;
}

}  // namespace flipgraph
