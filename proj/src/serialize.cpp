#include "flipgraph/serialize.hpp"

#include <map>
#include <ostream>

namespace flipgraph {

namespace {

template <typename T>
T field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(std::string("missing field \"") + name + "\"");
  try {
    return j.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(std::string("field \"") + name + "\" has the wrong type");
  }
}

}  // namespace

Json to_json(const CombTriangulation& t, const SurfaceSpec& s) {
  Json j;
  j["genus"] = s.genus;
  j["punctures"] = s.punctures;
  Json tris = Json::array();
  for (int f = 0; f < t.num_triangles(); ++f) tris.push_back({3 * f, 3 * f + 1, 3 * f + 2});
  j["triangles"] = std::move(tris);
  j["gluing"] = std::vector<int>(t.gluing().begin(), t.gluing().end());
  j["edges"] = std::vector<int>(t.edge_of_slot().begin(), t.edge_of_slot().end());
  return j;
}

SurfaceSpec surface_from_json(const Json& j) {
  return SurfaceSpec::checked(field<int>(j, "genus"), field<int>(j, "punctures"));
}

CombTriangulation triangulation_from_json(const Json& j) {
  const auto spec = surface_from_json(j);
  const auto gluing = field<std::vector<int>>(j, "gluing");
  if (j.contains("triangles")) {
    const auto tris = field<std::vector<std::vector<int>>>(j, "triangles");
    if (tris.size() * 3 != gluing.size()) throw Error("\"triangles\" and \"gluing\" disagree in size");
    for (std::size_t f = 0; f < tris.size(); ++f) {
      const int b = static_cast<int>(3 * f);
      if (tris[f] != std::vector<int>{b, b + 1, b + 2}) {
        throw Error("triangle " + std::to_string(f) + " must list slots 3f, 3f+1, 3f+2");
      }
    }
  }
  auto t = j.contains("edges") ? CombTriangulation(gluing, field<std::vector<int>>(j, "edges"))
                               : CombTriangulation(gluing);
  require_valid(t, spec);
  return t;
}

Json to_json(const ArcKey& k) { return k.coords; }

ArcKey arc_key_from_json(const Json& j) {
  if (!j.is_array()) throw Error("arc key must be an array of integers");
  ArcKey k;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw Error("arc key must be an array of integers");
    k.coords.push_back(x.get<std::int64_t>());
  }
  return k;
}

Json to_json(const MarkedTriangulation& m, const SurfaceSpec& s) {
  Json j = to_json(m.shape, s);
  Json keys = Json::array();
  for (const auto& k : m.keys) keys.push_back(to_json(k));
  j["keys"] = std::move(keys);
  j["word"] = m.word;
  j["digest"] = vertex_key(m).digest();
  return j;
}

MarkedTriangulation marked_from_json(const BaseContext& ctx, const Json& j) {
  const auto spec = surface_from_json(j);
  if (spec.genus != ctx.spec().genus || spec.punctures != ctx.spec().punctures) {
    throw Error("marked triangulation is for " + to_string(spec) + ", not " + to_string(ctx.spec()));
  }
  auto m = replay(base_marked(ctx), field<std::vector<int>>(j, "word"));
  if (j.contains("keys")) {
    std::vector<ArcKey> keys;
    for (const auto& k : j.at("keys")) keys.push_back(arc_key_from_json(k));
    if (keys != m.keys) throw Error("stored keys do not match the replayed word");
  }
  return m;
}

Json to_json(const MappingClass& phi) {
  Json j;
  j["word"] = phi.word;
  j["iso"] = phi.iso.slot_map;
  j["orientation"] = phi.orientation_preserving() ? "+" : "-";
  return j;
}

MappingClass mapping_class_from_json(const BaseContext& ctx, const Json& j) {
  Isomorphism iso;
  iso.slot_map = field<std::vector<int>>(j, "iso");
  const auto o = field<std::string>(j, "orientation");
  if (o == "+") iso.orientation_preserving = true;
  else if (o == "-" || o == "−") iso.orientation_preserving = false;
  else throw Error("orientation must be \"+\" or \"-\"");
  return make_mapping_class(ctx, field<std::vector<int>>(j, "word"), std::move(iso));
}

Json to_json(const FlipGraphBall& ball, const SurfaceSpec& s, bool include_vertices) {
  Json j;
  j["surface"] = {{"genus", s.genus}, {"punctures", s.punctures}};
  j["radius"] = ball.radius;
  j["certified_radius"] = ball.certified_radius();
  j["completed_depth"] = ball.completed_depth;
  j["truncated"] = ball.truncated;
  j["vertex_count"] = ball.size();
  j["edge_count"] = ball.edges.size();
  std::map<int, std::size_t> per_depth;
  for (const auto& v : ball.vertices) ++per_depth[v.depth];
  Json depths = Json::array();
  for (const auto& [d, n] : per_depth) depths.push_back(n);
  j["vertices_per_depth"] = std::move(depths);
  j["center"] = ball.center.digest();
  if (include_vertices) {
    Json vs = Json::array();
    for (std::size_t i = 0; i < ball.size(); ++i) {
      const auto& v = ball.vertices[i];
      Json keys = Json::array();
      for (const auto& k : v.marked.keys) keys.push_back(to_json(k));
      vs.push_back({{"index", i},
                    {"depth", v.depth},
                    {"digest", v.key.digest()},
                    {"word", v.marked.word},
                    {"keys", std::move(keys)}});
    }
    j["vertices"] = std::move(vs);
    Json es = Json::array();
    for (const auto& e : ball.edges) es.push_back({e.u, e.v});
    j["edges"] = std::move(es);
  }
  return j;
}

Json to_json(const QuotientGraph& q) {
  Json j;
  j["surface"] = {{"genus", q.spec.genus}, {"punctures", q.spec.punctures}};
  j["truncated"] = q.truncated;
  j["vertex_count"] = q.vertices.size();
  Json vs = Json::array();
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    const auto& v = q.vertices[i];
    vs.push_back({{"index", i},
                  {"key", v.key.hex()},
                  {"automorphisms", v.automorphisms},
                  {"exchangeable_edges", v.exchangeable_edges},
                  {"representative", to_json(v.representative, q.spec)}});
  }
  j["vertices"] = std::move(vs);
  Json es = Json::array();
  for (const auto& e : q.edge_ends) {
    es.push_back({{"from", e.from}, {"to", e.to}, {"edge", e.edge}, {"orbit_size", e.orbit_size}});
  }
  j["edge_ends"] = std::move(es);
  return j;
}

Json to_json(const CycleReport& r, const FlipGraphBall& ball) {
  Json j;
  j["clean"] = r.clean();
  j["counts"] = {{"3", r.counts[3]}, {"4", r.counts[4]}, {"5", r.counts[5]}};
  j["squares"] = r.squares;
  j["pentagons"] = r.pentagons;
  j["identity_checks"] = r.identity_checks;
  j["identity_failures"] = r.identity_failures;
  Json vs = Json::array();
  for (const auto& v : r.violations) {
    Json digests = Json::array();
    Json words = Json::array();
    for (int x : v.cycle.vertices) {
      digests.push_back(ball.vertices[x].key.digest());
      words.push_back(ball.vertices[x].marked.word);
    }
    vs.push_back({{"length", v.cycle.length()},
                  {"vertices", v.cycle.vertices},
                  {"digests", std::move(digests)},
                  {"words", std::move(words)},
                  {"reason", v.reason}});
  }
  j["violations"] = std::move(vs);
  return j;
}

Json to_json(const CheckReport& r) {
  Json j;
  j["name"] = r.name;
  j["passed"] = r.passed;
  j["inconclusive"] = r.inconclusive;
  j["comparisons"] = r.comparisons;
  j["detours"] = r.detours;
  j["witnesses"] = r.witnesses;
  return j;
}

Json to_json(const DeltaScan& scan) {
  Json j;
  j["seed"] = scan.seed;
  j["radius"] = scan.radius;
  j["certified_radius"] = scan.certified_radius;
  j["truncated"] = scan.truncated;
  Json rows = Json::array();
  for (const auto& e : scan.per_radius) {
    rows.push_back({{"radius", e.radius},
                    {"vertices", e.vertices},
                    {"quadruples", e.quadruples},
                    {"uncertified", e.uncertified},
                    {"exact", e.exact},
                    {"max_delta", e.max_delta.value()},
                    {"witness", e.witness}});
  }
  j["per_radius"] = std::move(rows);
  return j;
}

Json to_json(const FlatWitness& w) {
  Json j;
  j["support1"] = w.support1;
  j["support2"] = w.support2;
  j["all_commute"] = w.all_commute();
  j["commutes"] = w.commutes;
  j["distance"] = w.distance;
  return j;
}

Json to_json(const SurgeryResult& r) {
  Json j;
  j["length"] = r.path.size();
  Json steps = Json::array();
  for (const auto& s : r.steps) {
    steps.push_back({{"kind", to_string(s.kind)},
                     {"position", s.position},
                     {"bad_before", s.bad_before},
                     {"bad_after", s.bad_after}});
  }
  j["steps"] = std::move(steps);
  Json words = Json::array();
  for (const auto& m : r.path) words.push_back(m.word);
  j["path_words"] = std::move(words);
  return j;
}

void write_dot(std::ostream& out, const FlipGraphBall& ball) {
  out << "graph ball {\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < ball.size(); ++i) {
    out << "  n" << i << " [label=\"" << i << "\", tooltip=\"" << ball.vertices[i].key.digest() << "\"];\n";
  }
  for (const auto& e : ball.edges) out << "  n" << e.u << " -- n" << e.v << ";\n";
  out << "}\n";
}

void write_dot(std::ostream& out, const QuotientGraph& q) {
  out << "digraph quotient {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < q.vertices.size(); ++i) {
    out << "  q" << i << " [label=\"" << i << "\", tooltip=\"" << q.vertices[i].key.hex() << "\"];\n";
  }
  std::map<std::pair<int, int>, int> multiplicity;
  for (const auto& e : q.edge_ends) ++multiplicity[{e.from, e.to}];
  for (const auto& [ends, n] : multiplicity) {
    out << "  q" << ends.first << " -> q" << ends.second << " [label=\"" << n << "\"];\n";
  }
  out << "}\n";
}

void write_csv(std::ostream& out, const DeltaScan& scan) {
  out << "radius,vertices,samples,uncertified,exact,max_delta,w0,w1,w2,w3,seed\n";
  for (const auto& e : scan.per_radius) {
    out << e.radius << ',' << e.vertices << ',' << e.quadruples << ',' << e.uncertified << ','
        << (e.exact ? 1 : 0) << ',' << e.max_delta.to_string();
    for (int w : e.witness) out << ',' << w;
    out << ',' << scan.seed << '\n';
  }
}

}  // namespace flipgraph
