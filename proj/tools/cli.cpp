#include "cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "flipgraph/parallel.hpp"
#include "flipgraph/serialize.hpp"

namespace flipgraph::cli {

namespace {

struct RunConfig {
  std::string command;
  int genus = 0;
  int punctures = 0;
  int radius = 3;
  std::size_t cap = 0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  unsigned threads = 1;
  int walk_length = 4;
  int trials = 10;
  bool summary = false;
  std::string out;
  std::string dot;
  std::string csv;
};

// Threads are left out: they never change results.
Json config_json(const RunConfig& c) {
  return {{"command", c.command},   {"genus", c.genus},     {"punctures", c.punctures},
          {"radius", c.radius},     {"cap", c.cap},         {"seed", c.seed},
          {"samples", c.samples},   {"walk_length", c.walk_length},
          {"trials", c.trials},     {"summary", c.summary}, {"out", c.out},
          {"dot", c.dot},           {"csv", c.csv}};
}

std::size_t default_samples(const std::string& command) {
  if (command == "delta") return 100'000;
  if (command == "arcmap") return 20;
  if (command == "surgery") return 10;
  return 0;
}

// Values given on the command line, each tracked by its CLI11 option.
struct Flags {
  int genus = 0, punctures = 0, radius = 0, walk_length = 0, trials = 0;
  std::size_t cap = 0, samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string config, out, dot, csv;
  bool summary = false;
  std::map<std::string, CLI::Option*> opts;

  void attach(CLI::App* sub) {
    opts["genus"] = sub->add_option("--genus", genus, "Genus g >= 0");
    opts["punctures"] = sub->add_option("--punctures", punctures, "Number of punctures n >= 1");
    opts["radius"] = sub->add_option("--radius", radius, "Ball radius (default 3)");
    opts["cap"] = sub->add_option("--cap", cap, "Vertex cap");
    opts["seed"] = sub->add_option("--seed", seed, "Random seed (default 0)");
    opts["samples"] = sub->add_option("--samples", samples, "Sample count");
    opts["threads"] = sub->add_option("--threads", threads, "Worker threads (default: all cores)");
    opts["walk_length"] = sub->add_option("--walk-length", walk_length, "Flip walk length (default 4)");
    opts["trials"] = sub->add_option("--trials", trials, "Triangulation choices per arc (default 10)");
    opts["config"] = sub->add_option("--config", config, "JSON file with defaults; flags win");
    opts["out"] = sub->add_option("--out", out, "Write JSON here instead of stdout");
    opts["dot"] = sub->add_option("--dot", dot, "Also write Graphviz DOT here");
    opts["csv"] = sub->add_option("--csv", csv, "Also write CSV here (delta)");
    opts["summary"] = sub->add_flag("--summary", summary, "Omit per-vertex data from ball output");
  }
  bool given(const std::string& name) const { return opts.at(name)->count() > 0; }
};

template <typename T>
void merge(T& target, const Flags& flags, const std::string& name, const T& flag_value,
           const Json& file) {
  if (flags.given(name)) {
    target = flag_value;
  } else if (file.contains(name)) {
    try {
      target = file.at(name).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw Error("config field \"" + name + "\" has the wrong type");
    }
  }
}

RunConfig resolve(const std::string& command, const Flags& f) {
  Json file = Json::object();
  if (f.given("config")) {
    std::ifstream in(f.config);
    if (!in) throw Error("cannot read config file " + f.config);
    try {
      file = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw Error("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!file.is_object()) throw Error("config file must hold a JSON object");
    static const std::set<std::string> known{"genus",   "punctures",   "radius", "cap",
                                             "seed",    "samples",     "threads", "walk_length",
                                             "trials",  "summary",     "out",    "dot",
                                             "csv",     "command"};
    for (const auto& [k, v] : file.items()) {
      if (!known.contains(k)) throw Error("unknown config field \"" + k + "\"");
    }
  }
  RunConfig c;
  c.command = command;
  c.cap = command == "quotient" ? kDefaultQuotientCap : kDefaultBallCap;
  c.samples = default_samples(command);
  c.threads = default_threads();
  merge(c.genus, f, "genus", f.genus, file);
  merge(c.punctures, f, "punctures", f.punctures, file);
  merge(c.radius, f, "radius", f.radius, file);
  merge(c.cap, f, "cap", f.cap, file);
  merge(c.seed, f, "seed", f.seed, file);
  merge(c.samples, f, "samples", f.samples, file);
  merge(c.threads, f, "threads", f.threads, file);
  merge(c.walk_length, f, "walk_length", f.walk_length, file);
  merge(c.trials, f, "trials", f.trials, file);
  merge(c.summary, f, "summary", f.summary, file);
  merge(c.out, f, "out", f.out, file);
  merge(c.dot, f, "dot", f.dot, file);
  merge(c.csv, f, "csv", f.csv, file);

  if (!f.given("genus") && !file.contains("genus")) throw Error("--genus is required");
  if (!f.given("punctures") && !file.contains("punctures")) throw Error("--punctures is required");
  SurfaceSpec::checked(c.genus, c.punctures);
  if (c.radius < 0) throw Error("--radius must be non-negative");
  if (c.cap == 0) throw Error("--cap must be positive");
  if (c.threads == 0) c.threads = 1;
  if (c.walk_length < 0) throw Error("--walk-length must be non-negative");
  if (c.trials < 2) throw Error("--trials must be at least 2");
  return c;
}

struct Outcome {
  Json result;
  int code = kClean;
  std::string status = "clean";
};

void write_file(const std::string& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  body(f);
}

std::string one_line(const Json& j) { return j.dump(); }

Outcome cmd_ball(const RunConfig& c) {
  const SurfaceSpec spec{c.genus, c.punctures};
  const auto ball = build_ball(BaseContext(spec), c.radius, c.cap, c.threads);
  Outcome o{to_json(ball, spec, !c.summary)};
  if (!c.dot.empty()) {
    write_file(c.dot, [&](std::ostream& s) {
      s << "// format_version " << kFormatVersion << " config " << one_line(config_json(c)) << "\n";
      write_dot(s, ball);
    });
  }
  if (ball.truncated) o = {std::move(o.result), kInvalid, "truncated"};
  return o;
}

Outcome cmd_quotient(const RunConfig& c) {
  const auto q = build_quotient(SurfaceSpec{c.genus, c.punctures}, c.cap);
  Outcome o{to_json(q)};
  if (!c.dot.empty()) {
    write_file(c.dot, [&](std::ostream& s) {
      s << "// format_version " << kFormatVersion << " config " << one_line(config_json(c)) << "\n";
      write_dot(s, q);
    });
  }
  if (q.truncated) o = {std::move(o.result), kInvalid, "truncated"};
  return o;
}

Outcome cmd_audit(const RunConfig& c) {
  const SurfaceSpec spec{c.genus, c.punctures};
  const auto ball = build_ball(BaseContext(spec), c.radius, c.cap, c.threads);
  const auto report = audit_ball(ball, c.threads);
  Outcome o;
  o.result["ball"] = to_json(ball, spec, false);
  o.result["cycles"] = to_json(report, ball);
  if (!report.clean()) return {std::move(o.result), kViolation, "violation"};
  if (ball.truncated) return {std::move(o.result), kInvalid, "truncated"};
  return o;
}

Outcome cmd_delta(const RunConfig& c) {
  const BaseContext ctx(SurfaceSpec{c.genus, c.punctures});
  DeltaScanOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.threads = c.threads;
  opts.cap = c.cap;
  const auto scan = delta_scan(ctx, c.radius, opts);
  Outcome o;
  o.result["scan"] = to_json(scan);

  // Flat witnesses from flips on disjoint quadrilaterals of the base.
  const auto base = base_marked(ctx);
  const auto edges = exchangeable_edges(base.shape);
  Json flats = Json::array();
  bool commute = true;
  for (std::size_t i = 0; i < edges.size() && flats.size() < 3; ++i) {
    for (std::size_t k = i + 1; k < edges.size() && flats.size() < 3; ++k) {
      std::set<int> tris;
      for (int t : incident_triangles(base.shape, edges[i])) tris.insert(t);
      for (int t : incident_triangles(base.shape, edges[k])) tris.insert(t);
      if (tris.size() != 4) continue;
      const auto w = flat_witness(ctx, {edges[i].id}, {edges[k].id}, 3, 3);
      commute = commute && w.all_commute();
      Json j = to_json(w);
      j["word1"] = {edges[i].id};
      j["word2"] = {edges[k].id};
      flats.push_back(std::move(j));
    }
  }
  o.result["flat_witnesses"] = std::move(flats);

  if (!c.csv.empty()) {
    write_file(c.csv, [&](std::ostream& s) {
      s << "# format_version " << kFormatVersion << " config " << one_line(config_json(c)) << "\n";
      write_csv(s, scan);
    });
  }
  if (!commute) return {std::move(o.result), kViolation, "violation"};
  if (scan.truncated) o.status = "truncated";
  return o;
}

Outcome cmd_arcmap(const RunConfig& c) {
  const BaseContext ctx(SurfaceSpec{c.genus, c.punctures});
  std::mt19937_64 rng(c.seed);
  const auto base = base_marked(ctx);
  auto random_vertex = [&](int steps) {
    auto m = base;
    for (int k = 0; k < steps; ++k) {
      const auto options = exchangeable_edges(m.shape);
      m = flip_marked(m, options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)]);
    }
    return m;
  };

  Json classes = Json::array();
  std::map<std::string, std::size_t> failures{{"well_defined", 0}, {"naturality", 0}, {"functorial", 0}};
  std::size_t inconclusive = 0;
  std::size_t detours = 0;
  for (std::size_t s = 0; s < c.samples; ++s) {
    const auto phi = random_mapping_class(ctx, c.walk_length, rng);
    Json entry;
    entry["mapping_class"] = to_json(phi);
    Json checks = Json::array();
    auto note = [&](const CheckReport& r) {
      if (!r.passed) ++failures[r.name];
      if (r.inconclusive) ++inconclusive;
      detours += r.detours;
      checks.push_back(to_json(r));
    };

    ArcMap arcs;
    const auto home = random_vertex(static_cast<int>(s % 3));
    for (int e = 0; e < home.shape.num_edges(); ++e) {
      note(check_well_defined(ctx, phi, home.keys[e], home, c.trials, rng));
      if (is_exchangeable(home.shape, EdgeRef{e})) arcs.record(home.keys[e], tilde_arc_map(ctx, phi, home.keys[e], home));
    }
    note(check_naturality(ctx, phi, base));
    // Prefer a triangulation with a folded edge so the dual-edge detour runs.
    auto delta = random_vertex(c.walk_length);
    for (int tries = 0; tries < 20 && exchangeable_edges(delta.shape).size() == static_cast<std::size_t>(delta.shape.num_edges()); ++tries) {
      delta = random_vertex(1 + tries % 4);
    }
    note(check_naturality(ctx, phi, delta));
    const auto psi = random_mapping_class(ctx, c.walk_length, rng);
    note(check_functorial(ctx, phi, psi, c.trials, rng));
    note(check_functorial(ctx, phi, inverse(ctx, phi), c.trials, rng));
    entry["checks"] = std::move(checks);
    entry["arcs_mapped"] = arcs.size();
    classes.push_back(std::move(entry));
  }

  Outcome o;
  o.result["seed"] = c.seed;
  o.result["failures"] = failures;
  o.result["inconclusive"] = inconclusive;
  o.result["detours"] = detours;
  o.result["classes"] = std::move(classes);
  for (const auto& [name, n] : failures) {
    if (n > 0) return {std::move(o.result), kViolation, "violation"};
  }
  return o;
}

Outcome cmd_surgery(const RunConfig& c) {
  const BaseContext ctx(SurfaceSpec{c.genus, c.punctures});
  if (c.punctures < 2) throw Error("surgery needs at least two punctures: with one puncture every edge is exchangeable");
  std::mt19937_64 rng(c.seed);
  Json fixtures = Json::array();
  std::size_t failed = 0;
  const int length = std::max(c.walk_length, 3);
  for (std::size_t s = 0; s < c.samples; ++s) {
    auto fixture = random_surgery_fixture(ctx, 2, length, rng);
    if (!fixture) throw Error("no surgery fixture found; try a longer --walk-length");
    Json entry;
    entry["arc"] = to_json(fixture->arc);
    entry["input_words"] = Json::array();
    for (const auto& m : fixture->path) entry["input_words"].push_back(m.word);
    entry["bad_vertices"] = count_non_exchangeable(fixture->path, fixture->arc);
    const auto r = make_exchangeable_path(fixture->path, fixture->arc);
    bool ok = count_non_exchangeable(r.path, fixture->arc) == 0 &&
              vertex_key(r.path.front()) == vertex_key(fixture->path.front()) &&
              vertex_key(r.path.back()) == vertex_key(fixture->path.back());
    for (std::size_t k = 1; k < r.path.size(); ++k) ok = ok && adjacent(r.path[k - 1], r.path[k]);
    if (!ok) ++failed;
    entry["valid"] = ok;
    entry["surgery"] = to_json(r);
    fixtures.push_back(std::move(entry));
  }
  Outcome o;
  o.result["seed"] = c.seed;
  o.result["fixtures"] = fixtures.size();
  o.result["failed"] = failed;
  o.result["results"] = std::move(fixtures);
  if (failed > 0) return {std::move(o.result), kViolation, "violation"};
  return o;
}

const std::map<std::string, std::function<Outcome(const RunConfig&)>>& commands() {
  static const std::map<std::string, std::function<Outcome(const RunConfig&)>> table{
      {"ball", cmd_ball},   {"quotient", cmd_quotient}, {"audit", cmd_audit},
      {"delta", cmd_delta}, {"arcmap", cmd_arcmap},     {"surgery", cmd_surgery}};
  return table;
}

const std::map<std::string, std::string> kDescriptions{
    {"ball", "Explore the flip graph ball around the base triangulation"},
    {"quotient", "Build the finite quotient by the extended mapping class group"},
    {"audit", "Classify all 3-, 4- and 5-cycles of a ball"},
    {"delta", "Estimate four-point delta per radius and check flat witnesses"},
    {"arcmap", "Sweep the induced arc map over random mapping classes"},
    {"surgery", "Run exchangeable-path surgery on random fixtures"}};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Flip graphs of ideal triangulations of punctured surfaces", "flipgraph"};
  app.require_subcommand(1);
  std::map<std::string, Flags> flags;
  for (const auto& [name, fn] : commands()) flags[name].attach(app.add_subcommand(name, kDescriptions.at(name)));

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kClean;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const RunConfig config = resolve(command, flags.at(command));
    Outcome outcome = commands().at(command)(config);
    Json doc;
    doc["format_version"] = kFormatVersion;
    doc["command"] = command;
    doc["config"] = config_json(config);
    doc["status"] = outcome.status;
    doc["result"] = std::move(outcome.result);
    if (config.out.empty()) {
      out << doc.dump(2) << "\n";
    } else {
      write_file(config.out, [&](std::ostream& s) { s << doc.dump(2) << "\n"; });
    }
    if (outcome.status == "truncated") err << "warning: vertex cap reached before the requested radius\n";
    return outcome.code;
  } catch (const InvariantViolation& e) {
    err << "violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
}

}  // namespace flipgraph::cli
