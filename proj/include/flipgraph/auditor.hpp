#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "flipgraph/explorer.hpp"

namespace flipgraph {

/// A simple cycle of ball vertex indices, rotated to start at its smallest
/// vertex and oriented so that the second entry is smaller than the last.
struct Cycle {
  std::vector<int> vertices;
  std::size_t length() const { return vertices.size(); }
  bool operator==(const Cycle&) const = default;
  auto operator<=>(const Cycle&) const = default;
};

enum class CycleKind { square, pentagon, violation };
const char* to_string(CycleKind k);

struct CycleClassification {
  CycleKind kind = CycleKind::violation;
  /// The difference identity (Δ1-Δ4 = Δ2-Δ3, or Δ1-Δ5 = Δ2-Δ3) held for every
  /// rotation and direction of the cycle.
  bool difference_identity = false;
  std::string reason;
};

inline constexpr int kMaxCycleLength = 5;

/// Simple cycles of length 3..max_len whose vertices all have complete
/// neighbourhoods in the ball. Sorted.
std::vector<Cycle> enumerate_simple_cycles(const FlipGraphBall& ball, int max_len,
                                           unsigned threads = 1);

CycleClassification classify_cycle(const FlipGraphBall& ball, const Cycle& cycle);

struct CycleViolation {
  Cycle cycle;
  std::string reason;
};

struct CycleReport {
  /// Indexed by length; entries 3..5 are meaningful.
  std::array<std::size_t, kMaxCycleLength + 1> counts{};
  std::size_t squares = 0;
  std::size_t pentagons = 0;
  std::size_t identity_checks = 0;
  std::size_t identity_failures = 0;
  std::vector<CycleViolation> violations;

  bool clean() const { return violations.empty() && identity_failures == 0; }
};

CycleReport audit_ball(const FlipGraphBall& ball, unsigned threads = 1);

}  // namespace flipgraph
