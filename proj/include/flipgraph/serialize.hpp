#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "flipgraph/auditor.hpp"
#include "flipgraph/explorer.hpp"
#include "flipgraph/mcg.hpp"
#include "flipgraph/metric.hpp"

namespace flipgraph {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json to_json(const CombTriangulation& t, const SurfaceSpec& s);
/// Inverse of to_json; validates the result against its declared surface.
CombTriangulation triangulation_from_json(const Json& j);
SurfaceSpec surface_from_json(const Json& j);

Json to_json(const ArcKey& k);
ArcKey arc_key_from_json(const Json& j);

Json to_json(const MarkedTriangulation& m, const SurfaceSpec& s);
/// Rebuilds by replaying the stored word from ctx's base and checks that the
/// stored keys agree.
MarkedTriangulation marked_from_json(const BaseContext& ctx, const Json& j);

Json to_json(const MappingClass& phi);
MappingClass mapping_class_from_json(const BaseContext& ctx, const Json& j);

Json to_json(const FlipGraphBall& ball, const SurfaceSpec& s, bool include_vertices = true);
Json to_json(const QuotientGraph& q);
Json to_json(const CycleReport& r, const FlipGraphBall& ball);
Json to_json(const CheckReport& r);
Json to_json(const DeltaScan& scan);
Json to_json(const FlatWitness& w);
Json to_json(const SurgeryResult& r);

/// Graphviz: vertex label = index, tooltip = VertexKey digest.
void write_dot(std::ostream& out, const FlipGraphBall& ball);
/// Graphviz digraph; each edge carries the number of edge orbits it stands for.
void write_dot(std::ostream& out, const QuotientGraph& q);
/// Header row, then one row per radius.
void write_csv(std::ostream& out, const DeltaScan& scan);

}  // namespace flipgraph
