#include "knlab/cli.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "knlab/json_io.hpp"
#include "knlab/rng.hpp"

namespace knlab {

namespace {

enum class Format { json, jsonl, text };

struct Globals {
  std::string output;
  Format format = Format::json;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0: available parallelism
  std::string checkpoint;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string_view format_name(Format f) {
  switch (f) {
    case Format::json: return "json";
    case Format::jsonl: return "jsonl";
    case Format::text: return "text";
  }
  return "?";
}

class Emitter {
 public:
  Emitter(const Globals& g, std::ostream& out) : g_(g), out_(out) {}

  Json config(std::string_view command) const {
    Json c = {{"command", std::string(command)}, {"format", std::string(format_name(g_.format))}};
    c["output"] = g_.output.empty() ? Json(nullptr) : Json(g_.output);
    return c;
  }

  // `text` is only used for the text format.
  void emit(Json config, Json report, double wall_time_s, const std::string& text) {
    std::ofstream file;
    std::ostream* os = &out_;
    if (!g_.output.empty()) {
      file.open(g_.output, g_.format == Format::jsonl ? std::ios::app : std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open output file " + g_.output);
      os = &file;
    }
    if (g_.format == Format::text) {
      *os << text;
    } else {
      Json doc = {{"config", std::move(config)},
                  {"report", std::move(report)},
                  {"metadata", {{"workers", workers()}, {"wall_time_s", wall_time_s}, {"timestamp", utc_timestamp()}}}};
      *os << (g_.format == Format::jsonl ? doc.dump() : doc.dump(2)) << '\n';
    }
    if (!os->flush()) throw std::runtime_error("write failed");
  }

  unsigned workers() const {
    if (g_.workers != 0) return g_.workers;
    return std::max(1u, std::thread::hardware_concurrency());
  }

 private:
  const Globals& g_;
  std::ostream& out_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string file;
  bool bridge = false;
};

int cmd_verify(const VerifyArgs& a, const Globals& g, Emitter& em, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<EdgePartition> parts;
  try {
    if (a.file == "-") {
      parts = read_partitions(std::cin);
    } else {
      std::ifstream in(a.file);
      if (!in) throw UsageError("cannot open " + a.file);
      parts = read_partitions(in);
    }
  } catch (const ParseError& e) {
    err << a.file << ": " << e.what() << '\n';
    return 2;
  }

  int exit_code = 0;
  Json results = Json::array();
  std::ostringstream text;
  for (const auto& p : parts) {
    Json r;
    if (p.mode() == PartitionMode::theorem) {
      const auto rep = check_theorem1(p);
      const auto facts = structural_facts(p);
      r = to_json(rep);
      r["structure"] = to_json(facts);
      if (!rep.theorem_holds || !facts.all_facts_hold()) exit_code = 1;
      text << "n=" << p.n() << " theorem mode: I_ST=" << rep.sums.st << " I_ZT=" << rep.sums.zt
           << " I_ZS=" << rep.sums.zs << (rep.theorem_holds ? " holds" : " VIOLATED") << " p=" << rep.p
           << " q=" << rep.q << (facts.all_facts_hold() ? "" : " STRUCTURAL FACT FAILED") << '\n';
      if (!rep.theorem_holds) err << "witness: " << format_partition(p) << '\n';
    } else {
      const auto sums = incidence_sums(degree_profile(p));
      r = {{"n", p.n()},
           {"mode", "general"},
           {"note", "|Z| = " + std::to_string(p.count(Label::Z)) + " differs from n-3 = " + std::to_string(p.n() - 3) +
                        "; the incidence theorem does not apply"},
           {"sharpness",
            {{"i_st", sums.st}, {"i_zt", sums.zt}, {"i_zs", sums.zs}, {"violates_min_bound", !sums.bound_holds()}}}};
      text << "n=" << p.n() << " general mode (|Z|=" << p.count(Label::Z) << "): I_ST=" << sums.st
           << " I_ZT=" << sums.zt << " I_ZS=" << sums.zs << (sums.bound_holds() ? "" : " min bound fails") << '\n';
    }
    if (a.bridge) r["bridge"] = to_json(theorem2_bridge_report(p));
    r["partition"] = format_partition(p);
    results.push_back(std::move(r));
  }
  Json cfg = em.config("verify");
  cfg["file"] = a.file;
  cfg["bridge"] = a.bridge;
  (void)g;
  em.emit(std::move(cfg), {{"partitions", parts.size()}, {"results", std::move(results)}}, seconds_since(t0),
          text.str());
  return exit_code;
}

// ---------------------------------------------------------------- search

struct SearchArgs {
  int n = 0;
  std::string mode = "exhaustive";
  int p = 0;
  int q = 0;
  std::uint64_t samples = 0;
  bool symmetry = false;
  bool allow_large = false;
  bool no_prune = false;
  bool realize_all = false;
  std::uint64_t max_units = 0;
};

int cmd_search(const SearchArgs& a, const Globals& g, Emitter& em, std::ostream& err) {
  SearchConfig c;
  c.n = a.n;
  c.mode = search_mode_from_string(a.mode);
  c.use_symmetry = a.symmetry;
  c.samples = a.samples;
  c.seed = g.seed;
  c.p = a.p;
  c.q = a.q;
  c.prune = !a.no_prune;
  c.realize_all = a.realize_all;
  c.allow_large = a.allow_large;
  c.workers = em.workers();
  c.checkpoint_path = g.checkpoint;
  if (a.max_units != 0) c.unit_budget = a.max_units;

  const SearchReport r = run_search(c);
  Json cfg = em.config("search");
  const Json sc = to_json(c);
  for (auto it = sc.begin(); it != sc.end(); ++it) cfg[it.key()] = it.value();

  std::ostringstream text;
  text << "search " << to_string(c.mode) << " n=" << c.n << ": " << r.counters.partitions_checked
       << " partitions, " << r.counters.profiles_checked << " profiles";
  if (c.mode == SearchMode::profile)
    text << " (" << r.counters.relaxation_violations << " relaxation violations, "
         << r.counters.realizable_violations << " realizable)";
  text << ", " << r.violations.size() << " violations" << (r.complete ? "" : ", incomplete") << '\n';
  if (r.vacuous) text << "vacuous: " << r.vacuous_reason << '\n';
  for (const auto& v : r.violations) text << "witness: " << format_partition(v) << '\n';
  if (!r.complete)
    err << "stopped after " << r.units_done << " of " << r.units_total << " units; rerun with the same checkpoint to resume\n";

  em.emit(std::move(cfg), to_json(r), r.wall_time_s, text.str());
  if (r.violations.empty() && r.counters.realizable_violations == 0) return 0;
  if (g.format != Format::text)
    for (const auto& v : r.violations) err << "witness: " << format_partition(v) << '\n';
  return 1;
}

// ------------------------------------------------------------- sharpness

struct SharpnessArgs {
  int n = 0;
  std::string emit_partition;
};

int cmd_sharpness(const SharpnessArgs& a, Emitter& em) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.n < 5) throw UsageError("sharpness needs n >= 5, got " + std::to_string(a.n));
  const auto rep = verify_sharpness(a.n);
  if (!a.emit_partition.empty()) {
    std::ofstream f(a.emit_partition, std::ios::trunc);
    if (!f || !(f << format_partition(sharp_family(a.n)) << '\n')) throw std::runtime_error("cannot write " + a.emit_partition);
  }
  Json cfg = em.config("sharpness");
  cfg["n"] = a.n;
  cfg["emit_partition"] = a.emit_partition.empty() ? Json(nullptr) : Json(a.emit_partition);
  std::ostringstream text;
  text << "n=" << rep.n << ": I_ST=" << rep.i_st << " I_ZS=" << rep.i_zs << " I_ZT=" << rep.i_zt
       << (rep.violates_min_bound ? " (min bound fails)" : " (min bound holds)") << '\n';
  em.emit(std::move(cfg), to_json(rep), seconds_since(t0), text.str());
  return 0;
}

// ---------------------------------------------------------------- orient

struct OrientArgs {
  int n = 0;
  std::uint64_t count = 1;
  int k = -1;
  bool enumerate = false;
  std::uint64_t cap = 100000;
  std::string input;
  std::string emit_dir;
  std::uint64_t sample_pairs = 0;
  bool no_paths = false;
};

int cmd_orient(const OrientArgs& a, const Globals& g, Emitter& em, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::pair<Orientation, Json>> items;  // orientation + provenance
  std::shared_ptr<const LineGraph> lg;
  int n = a.n;
  if (!a.input.empty()) {
    std::ifstream in(a.input);
    if (!in) throw UsageError("cannot open " + a.input);
    std::optional<Orientation> o;
    try {
      o = parse_orientation(in);
    } catch (const ParseError& e) {
      err << a.input << ": " << e.what() << '\n';
      return 2;
    }
    n = o->line_graph().base_n;
    lg = o->shared_graph();
    items.emplace_back(*o, Json{{"source", a.input}});
  } else {
    if (n < 3) throw UsageError("orient needs n >= 3");
    lg = std::make_shared<const LineGraph>(build_line_graph(n));
  }
  const int k = a.k < 0 ? n - 2 : a.k;
  if (k < 1) throw UsageError("k must be at least 1");
  if (k > n - 2)
    throw UsageError("k = " + std::to_string(k) + " exceeds n-2 = " + std::to_string(n - 2) +
                     ", the out-degree of every Eulerian orientation of J(n,2)");
  if (a.sample_pairs == 0 && k > lg->graph.vertex_count() - 2) throw UsageError("k too large for all-pairs checking");

  bool truncated = false;
  if (a.input.empty()) {
    if (a.enumerate) {
      std::uint64_t index = 0;
      auto res = enumerate_eulerian_orientations(lg, a.cap, [&](const Orientation& o) {
        items.emplace_back(o, Json{{"source", "enumeration"}, {"rank", index++}});
      });
      truncated = res.truncated;
    } else {
      for (std::uint64_t i = 0; i < a.count; ++i) {
        const std::uint64_t s = stream_seed(g.seed, i);
        items.emplace_back(eulerian_orientation(lg, s), Json{{"source", "circuit"}, {"index", i}, {"seed", s}});
      }
    }
  }

  if (!a.emit_dir.empty()) std::filesystem::create_directories(a.emit_dir);
  const PairPolicy policy = a.sample_pairs == 0 ? PairPolicy::all() : PairPolicy::sampled(a.sample_pairs, g.seed);
  Json list = Json::array();
  std::uint64_t certified = 0, refuted = 0;
  std::string invalid;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& [o, prov] = items[i];
    const Digraph d = o.digraph();
    const auto cert = is_strongly_k_connected(d, k, policy);
    const std::string problem = validate_certificate(d, cert);
    if (!problem.empty() && invalid.empty()) invalid = "orientation " + std::to_string(i) + ": " + problem;
    (cert.certified ? certified : refuted)++;
    Json c = to_json(cert);
    if (a.no_paths) c.erase("pairs");
    Json entry = prov;
    entry["eulerian"] = o.is_eulerian();
    entry["bits"] = o.bit_string();
    entry["certificate"] = std::move(c);
    entry["validated"] = problem.empty();
    list.push_back(std::move(entry));
    if (!a.emit_dir.empty()) {
      std::ofstream f(std::filesystem::path(a.emit_dir) / ("orientation_" + std::to_string(i) + ".txt"), std::ios::trunc);
      if (!(f << format_orientation(o))) throw std::runtime_error("cannot write to " + a.emit_dir);
    }
  }

  Json cfg = em.config("orient");
  cfg["n"] = n;
  cfg["k"] = k;
  cfg["seed"] = g.seed;
  cfg["source"] = !a.input.empty() ? "file" : a.enumerate ? "enumerate" : "circuit";
  if (a.enumerate) cfg["cap"] = a.cap;
  if (a.input.empty() && !a.enumerate) cfg["count"] = a.count;
  cfg["pairs"] = a.sample_pairs == 0 ? Json("all") : Json(a.sample_pairs);
  Json rep = {{"line_graph", {{"vertices", lg->graph.vertex_count()}, {"edges", lg->graph.edge_count()}}},
              {"orientations", items.size()},
              {"certified", certified},
              {"refuted", refuted},
              {"truncated", truncated},
              {"certifying", a.sample_pairs == 0},
              {"all_certificates_validated", invalid.empty()},
              {"results", std::move(list)}};
  std::ostringstream text;
  text << "J(" << n << ",2): " << items.size() << " orientations, " << certified << " certified, " << refuted
       << " refuted at k=" << k << (truncated ? " (truncated)" : "") << '\n';
  em.emit(std::move(cfg), std::move(rep), seconds_since(t0), text.str());
  if (!invalid.empty()) {
    err << "certificate failed validation: " << invalid << '\n';
    return 2;
  }
  return refuted == 0 ? 0 : 1;
}

// ------------------------------------------------------------- expansion

struct ExpansionArgs {
  int n = 0;
  int k = -1;
  int size_cap = 0;
  std::uint64_t samples = 0;
};

int cmd_expansion(const ExpansionArgs& a, const Globals& g, Emitter& em) {
  const auto t0 = std::chrono::steady_clock::now();
  if (a.n < 3) throw UsageError("expansion needs n >= 3");
  const LineGraph lg = build_line_graph(a.n);
  const int k = a.k < 0 ? a.n - 2 : a.k;
  ExpansionReport rep;
  try {
    rep = expansion_condition(lg.graph, "J(" + std::to_string(a.n) + ",2)", k, a.size_cap, a.samples, g.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  Json cfg = em.config("expansion");
  cfg["n"] = a.n;
  cfg["k"] = k;
  cfg["size_cap"] = a.size_cap;
  cfg["samples"] = a.samples;
  cfg["seed"] = g.seed;
  std::uint64_t failed = 0;
  for (const auto& r : rep.records) failed += r.satisfied ? 0 : 1;
  std::ostringstream text;
  text << rep.graph_id << " k=" << k << ": " << rep.records.size() << " sets, " << failed << " below threshold; "
       << rep.coverage << '\n';
  em.emit(std::move(cfg), to_json(rep), seconds_since(t0), text.str());
  return rep.all_satisfied ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incidence bounds for three-way edge partitions of K_n, and Eulerian orientations of J(n,2)", "knlab"};
  app.require_subcommand(1);
  Globals g;
  std::string format = "json";
  app.add_option("--output", g.output, "Write the report here (jsonl appends)");
  app.add_option("--format", format, "json, jsonl or text")->check(CLI::IsMember({"json", "jsonl", "text"}));
  app.add_option("--seed", g.seed, "64-bit seed");
  app.add_option("--workers", g.workers, "Worker threads (default: available parallelism)");
  app.add_option("--checkpoint", g.checkpoint, "Search checkpoint file; resumed if present");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check partitions from a file")->fallthrough();
  verify->add_option("file", va.file, "Partition file ('-' for stdin)")->required();
  verify->add_flag("--bridge", va.bridge, "Add the line-graph bridge quantities");

  SearchArgs sa;
  auto* search = app.add_subcommand("search", "Search for counterexamples")->fallthrough();
  search->add_option("--n", sa.n)->required();
  search->add_option("--mode", sa.mode)->check(CLI::IsMember({"exhaustive", "random", "profile"}));
  search->add_option("--p", sa.p, "Vertices with no S edge (profile mode)");
  search->add_option("--q", sa.q, "Vertices with no T edge (profile mode)");
  search->add_option("--samples", sa.samples, "Random mode sample count");
  search->add_flag("--symmetry", sa.symmetry, "One representative per isomorphism class (exhaustive)");
  search->add_flag("--allow-large", sa.allow_large, "Lift the exhaustive size caps");
  search->add_flag("--no-prune", sa.no_prune, "Evaluate every profile (profile mode)");
  search->add_flag("--realize-all", sa.realize_all, "Run realizability on every profile (profile mode)");
  search->add_option("--max-units", sa.max_units, "Stop after this many work units (resumable)");

  SharpnessArgs ha;
  auto* sharp = app.add_subcommand("sharpness", "Evaluate the |Z| = n-2 family")->fallthrough();
  sharp->add_option("--n", ha.n)->required();
  sharp->add_option("--emit-partition", ha.emit_partition, "Also write the partition to this file");

  OrientArgs oa;
  auto* orient = app.add_subcommand("orient", "Certify Eulerian orientations of J(n,2)")->fallthrough();
  orient->add_option("--n", oa.n);
  orient->add_option("--count", oa.count, "Orientations to generate");
  orient->add_option("--k", oa.k, "Connectivity to certify (default n-2)");
  orient->add_flag("--enumerate", oa.enumerate, "Enumerate all Eulerian orientations instead");
  orient->add_option("--cap", oa.cap, "Enumeration cap");
  orient->add_option("--input", oa.input, "Certify the orientation in this file");
  orient->add_option("--emit-orientations", oa.emit_dir, "Write each orientation to this directory");
  orient->add_option("--sample-pairs", oa.sample_pairs, "Check this many random pairs (not a proof)");
  orient->add_flag("--no-paths", oa.no_paths, "Omit path systems from the output");

  ExpansionArgs xa;
  auto* expansion = app.add_subcommand("expansion", "Neighbourhood expansion of J(n,2)")->fallthrough();
  expansion->add_option("--n", xa.n)->required();
  expansion->add_option("--k", xa.k, "Default n-2");
  expansion->add_option("--size-cap", xa.size_cap, "Largest set size checked exhaustively")->required();
  expansion->add_option("--samples", xa.samples, "Random sets per larger size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  g.format = format == "jsonl" ? Format::jsonl : format == "text" ? Format::text : Format::json;
  Emitter em(g, out);

  try {
    if (*verify) return cmd_verify(va, g, em, err);
    if (*search) return cmd_search(sa, g, em, err);
    if (*sharp) return cmd_sharpness(ha, em);
    if (*orient) {
      if (oa.input.empty() && oa.n == 0) throw UsageError("orient needs --n or --input");
      return cmd_orient(oa, g, em, err);
    }
    if (*expansion) return cmd_expansion(xa, g, em);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace knlab
