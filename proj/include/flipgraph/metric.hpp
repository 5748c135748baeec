#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flipgraph/explorer.hpp"

namespace flipgraph {

/// Hop distances inside a ball from a set of source vertices.
///
/// A pair (u, v) is certified when depth(u) + depth(v) + d_ball(u, v) is at
/// most twice the certified radius: every geodesic of the full flip graph
/// between them then stays inside the ball, so the ball distance is exact.
class DistanceTable {
 public:
  DistanceTable(const FlipGraphBall& ball, std::vector<int> sources, unsigned threads = 1);

  const std::vector<int>& sources() const { return sources_; }
  bool has_row(int v) const { return row_of_[v] >= 0; }
  /// Ball distance (-1 if unreachable). One of u, v must be a source.
  int distance(int u, int v) const;
  bool certified(int u, int v) const;

 private:
  const FlipGraphBall* ball_;
  std::vector<int> sources_;
  std::vector<int> row_of_;
  std::vector<std::vector<int>> rows_;
};

/// Multi-source BFS convenience wrapper.
DistanceTable bfs_distances(const FlipGraphBall& ball, const std::vector<int>& sources,
                            unsigned threads = 1);

/// δ stored as twice its value so half-integers stay exact.
struct HalfInteger {
  std::int64_t twice = 0;
  double value() const { return static_cast<double>(twice) / 2.0; }
  std::string to_string() const;
  auto operator<=>(const HalfInteger&) const = default;
};

/// Four-point δ: half the gap between the largest and second-largest of the
/// three pairing sums. Throws Error("quadruple not certified") when a pairwise
/// distance is not certified.
HalfInteger four_point_delta(const DistanceTable& d, const std::array<int, 4>& q);
/// Same from six raw distances d01, d02, d03, d12, d13, d23.
HalfInteger four_point_delta(const std::array<int, 6>& pairwise);

struct DeltaEstimate {
  int radius = 0;
  std::size_t vertices = 0;
  /// Certified quadruples evaluated at this radius.
  std::size_t quadruples = 0;
  /// Sampled quadruples skipped for lack of certification.
  std::size_t uncertified = 0;
  bool exact = false;
  /// Running maximum over this and all smaller radii.
  HalfInteger max_delta;
  std::array<int, 4> witness{-1, -1, -1, -1};
};

struct DeltaScan {
  std::uint64_t seed = 0;
  int radius = 0;
  bool truncated = false;
  int certified_radius = 0;
  std::vector<DeltaEstimate> per_radius;
};

struct DeltaScanOptions {
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::size_t cap = kDefaultBallCap;
  /// Evaluate every quadruple while the radius-r vertex set is at most this.
  std::size_t exact_threshold = 120;
  /// Sampled mode runs BFS from about this many depth-stratified sources.
  std::size_t sources = 256;
};

DeltaScan delta_scan(const BaseContext& ctx, int radius, const DeltaScanOptions& options = {});
/// Same over an already built ball.
DeltaScan delta_scan(const FlipGraphBall& ball, const DeltaScanOptions& options = {});

/// Exact flip distance between two marked triangulations by bidirectional
/// search, or nullopt past `max_distance` or `cap` visited vertices.
std::optional<int> flip_distance(const MarkedTriangulation& from, const MarkedTriangulation& to,
                                 int max_distance, std::size_t cap = kDefaultBallCap);

/// Triangle positions rewritten while replaying `word` `times` times from m.
std::vector<int> triangle_support(const MarkedTriangulation& m, const std::vector<int>& word,
                                  int times);

struct FlatWitness {
  std::vector<int> support1;
  std::vector<int> support2;
  /// [i][j]: w1^i w2^j and w2^j w1^i are the same vertex.
  std::vector<std::vector<bool>> commutes;
  /// [i][j]: distance from the base to w1^i w2^j, -1 when beyond the search limit.
  std::vector<std::vector<int>> distance;
  bool all_commute() const;
};

/// Checks that two flip words with disjoint triangle supports commute on the
/// grid 0..m x 0..n and records distances from the base.
FlatWitness flat_witness(const BaseContext& ctx, const std::vector<int>& w1,
                         const std::vector<int>& w2, int m, int n, int max_distance = 12);

}  // namespace flipgraph
