#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flipgraph/canonical.hpp"
#include "flipgraph/marking.hpp"

namespace flipgraph {

/// A mapping class presented as a flip word from the base together with an
/// isomorphism from the word's terminal shape back onto the base shape. It is
/// the homeomorphism carrying the base triangulation onto the terminal one.
struct MappingClass {
  std::vector<int> word;
  Isomorphism iso;
  /// Base edge e goes to terminal edge edge_image[e].
  std::vector<int> edge_image;

  bool orientation_preserving() const { return iso.orientation_preserving; }
};

/// Verifies that `iso` maps the terminal shape of `word` onto the base.
MappingClass make_mapping_class(const BaseContext& ctx, std::vector<int> word, Isomorphism iso);
MappingClass identity_class(const BaseContext& ctx);

/// `phi` after `psi`.
MappingClass compose(const BaseContext& ctx, const MappingClass& phi, const MappingClass& psi);
MappingClass inverse(const BaseContext& ctx, const MappingClass& phi);

/// Random walk of `walk_length` flips, then a random isomorphism of the
/// terminal shape onto the base. Walks are retried until one exists, growing
/// by one step every 50 attempts.
MappingClass random_mapping_class(const BaseContext& ctx, int walk_length, std::mt19937_64& rng,
                                  bool allow_orientation_reversing = true);

/// Image of a vertex: replay phi's word, then m's word pushed through phi.
MarkedTriangulation apply_to_vertex(const BaseContext& ctx, const MappingClass& phi,
                                    const MarkedTriangulation& m);

/// f~(a) = f(Δ) - f(Δ_a). `a` must be an exchangeable edge of `delta`.
ArcKey tilde_arc_map(const BaseContext& ctx, const MappingClass& phi, const ArcKey& a,
                     const MarkedTriangulation& delta);

/// Partial arc map accumulated from many defining choices. Conflicting or
/// non-injective entries are a hard error.
class ArcMap {
 public:
  void record(const ArcKey& from, const ArcKey& to);
  std::optional<ArcKey> lookup(const ArcKey& from) const;
  std::size_t size() const { return forward_.size(); }
  const std::map<ArcKey, ArcKey>& entries() const { return forward_; }

 private:
  std::map<ArcKey, ArcKey> forward_;
  std::map<ArcKey, ArcKey> backward_;
};

struct CheckReport {
  std::string name;
  bool passed = true;
  bool inconclusive = false;
  std::size_t comparisons = 0;
  /// Non-exchangeable edges handled through the dual-edge detour.
  std::size_t detours = 0;
  std::vector<std::string> witnesses;
};

/// Samples up to `trials` distinct triangulations containing `a` as an
/// exchangeable edge (walks from `home` that never flip `a`) and compares
/// the tilde values.
CheckReport check_well_defined(const BaseContext& ctx, const MappingClass& phi, const ArcKey& a,
                               const MarkedTriangulation& home, int trials, std::mt19937_64& rng);

/// Keys of phi(Δ) equal {f~(c) : c edge of Δ}.
CheckReport check_naturality(const BaseContext& ctx, const MappingClass& phi,
                             const MarkedTriangulation& delta);

/// f~h~ = (fh)~ on sampled arcs.
CheckReport check_functorial(const BaseContext& ctx, const MappingClass& phi,
                             const MappingClass& psi, int samples, std::mt19937_64& rng);

enum class SurgeryKind { pentagon, square, backtrack };
const char* to_string(SurgeryKind k);

struct SurgeryStep {
  SurgeryKind kind = SurgeryKind::square;
  std::size_t position = 0;
  std::size_t bad_before = 0;
  std::size_t bad_after = 0;
};

struct SurgeryResult {
  std::vector<MarkedTriangulation> path;
  std::vector<SurgeryStep> steps;
};

/// True when `a` is an edge of m and can be flipped there.
bool arc_exchangeable(const MarkedTriangulation& m, const ArcKey& a);
std::size_t count_non_exchangeable(const std::vector<MarkedTriangulation>& path, const ArcKey& a);

/// Reroutes a path through triangulations containing `a` so that `a` is
/// exchangeable everywhere, using pentagon and square detours.
SurgeryResult make_exchangeable_path(std::vector<MarkedTriangulation> path, const ArcKey& a);

struct SurgeryFixture {
  std::vector<MarkedTriangulation> path;
  ArcKey arc;
};

/// From a random start vertex, a walk of min_length..max_length flips that
/// never flips a chosen arc, ends with that arc exchangeable and passes
/// through at least one vertex where it is not. nullopt if none is found.
std::optional<SurgeryFixture> random_surgery_fixture(const BaseContext& ctx, int min_length,
                                                     int max_length, std::mt19937_64& rng,
                                                     int attempts = 1000);

}  // namespace flipgraph
