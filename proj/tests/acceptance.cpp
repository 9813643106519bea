// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "knlab/cli.hpp"
#include "knlab/incidence.hpp"
#include "knlab/orientlab.hpp"
#include "knlab/search.hpp"
#include "knlab/sharpness.hpp"
#include "oracles.hpp"

using namespace knlab;

namespace {

// Pinned limits.
constexpr double kSmallExhaustiveSeconds = 1.0;   // n = 4, 5
constexpr double kN6ExhaustiveSeconds = 60.0;
constexpr double kProfilePairSecondsUpTo10 = 300.0;
constexpr int kProfileMaxN = 15;
constexpr int kRandomCorpusPerN = 10000;
constexpr int kMengerGraphs = 1000;
constexpr int kOrientationSamples = 100;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.fail(std::string("exception: ") + e.what());
  }
  std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << id << " " << name << ": " << o.detail.str() << "(" << std::fixed
            << std::setprecision(1) << since(t0) << " s)" << std::endl;
  if (!o.pass) ++failures;
}

// The partition corpus shared by criteria 4-6: all 3^m labelings for n <= 5,
// then kRandomCorpusPerN random theorem-mode partitions for each 6 <= n <= 12.
void for_each_corpus_item(const std::function<void(int, const std::string&)>& fn) {
  for (int n = 3; n <= 5; ++n) {
    const int m = n * (n - 1) / 2;
    for (std::uint64_t code = 0; code < oracle::pow3(m); ++code) fn(n, oracle::labels_from_code(code, m));
  }
  std::mt19937_64 rng(20240601);
  for (int n = 6; n <= 12; ++n)
    for (int i = 0; i < kRandomCorpusPerN; ++i) fn(n, oracle::random_theorem_labels(n, rng));
}

std::string cli_json(std::vector<std::string> args) {
  args.insert(args.begin(), "knlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  // Exit 1 (e.g. an unsatisfied expansion record) is a result, not a failure.
  if (code == 2) throw std::runtime_error("knlab exited 2: " + err.str());
  auto j = nlohmann::ordered_json::parse(out.str());
  j.erase("metadata");
  return "exit " + std::to_string(code) + " " + j.dump();
}

}  // namespace

int main() {
  criterion(1, "exhaustive verification n=4,5,6", [](Outcome& o) {
    const std::uint64_t want[] = {192, 11520, 1863680};
    for (int n = 4; n <= 6; ++n) {
      const auto t0 = Clock::now();
      const auto r = exhaustive_search(n, false);
      const double secs = since(t0);
      const double limit = n == 6 ? kN6ExhaustiveSeconds : kSmallExhaustiveSeconds;
      if (r.counters.partitions_checked != want[n - 4]) o.fail("count at n=" + std::to_string(n));
      if (!r.violations.empty()) o.fail("violation at n=" + std::to_string(n));
      if (secs >= limit) o.fail("n=" + std::to_string(n) + " took " + std::to_string(secs) + " s");
      o.detail << "n=" << n << " " << r.counters.partitions_checked << " partitions, " << r.violations.size()
               << " violations, " << std::setprecision(3) << secs << " s; ";
    }
  });

  criterion(2, "sharpness family n=5..50", [](Outcome& o) {
    for (int n = 5; n <= 50; ++n) {
      const auto r = verify_sharpness(n);
      const std::int64_t k = n - 3;
      if (r.i_st != 2 * k || r.i_zs != 2 * k + 2 || r.i_zt < k * (n - 1) || !r.violates_min_bound)
        o.fail("closed forms at n=" + std::to_string(n));
      // Independent recount from the edge labels.
      const auto p = sharp_family(n);
      const auto d = oracle::degrees(n, p.label_string());
      if (oracle::dot(d.s, d.t) != r.i_st || oracle::dot(d.z, d.s) != r.i_zs || oracle::dot(d.z, d.t) != r.i_zt)
        o.fail("recount at n=" + std::to_string(n));
    }
    o.detail << "46 sizes exact; ";
  });

  criterion(3, "profile search, (p,q) in {(2,1),(2,2),(3,0),(3,1),(3,2),(3,3)}, n <= 15", [](Outcome& o) {
    const std::vector<std::pair<int, int>> pairs{{2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 3}};
    const auto dir = std::filesystem::temp_directory_path() / "knlab_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::uint64_t relax = 0, vacuous = 0, resumed_runs = 0;
    double worst_upto10 = 0;
    for (auto [p, q] : pairs) {
      double upto10 = 0;
      for (int n = 4; n <= kProfileMaxN; ++n) {
        SearchConfig c;
        c.n = n;
        c.mode = SearchMode::profile;
        c.p = p;
        c.q = q;
        c.workers = std::max(1u, std::thread::hardware_concurrency());
        const auto t0 = Clock::now();
        SearchReport r;
        if (n == kProfileMaxN) {
          // The largest size runs as a chain of budgeted, resumed runs.
          c.checkpoint_path = (dir / ("p" + std::to_string(p) + "q" + std::to_string(q) + ".json")).string();
          c.unit_budget = 64;
          do {
            r = run_search(c);
            ++resumed_runs;
          } while (!r.complete);
        } else {
          r = run_search(c);
        }
        if (n <= 10) upto10 += since(t0);
        const std::string tag = "n=" + std::to_string(n) + " (" + std::to_string(p) + "," + std::to_string(q) + ")";
        if (!r.complete) o.fail(tag + " incomplete");
        if (r.counters.realizable_violations != 0 || !r.violations.empty()) o.fail(tag + " realizable violation");
        relax += r.counters.relaxation_violations;
        vacuous += r.vacuous ? 1 : 0;
      }
      worst_upto10 = std::max(worst_upto10, upto10);
      if (upto10 >= kProfilePairSecondsUpTo10) o.fail("n <= 10 took too long for a pair");
    }
    std::filesystem::remove_all(dir);
    o.detail << "0 realizable violations over 72 runs (" << vacuous << " vacuous), " << relax
             << " relaxation violators all unrealizable, " << resumed_runs << " resumed chunks at n=15, slowest pair "
             << std::setprecision(2) << worst_upto10 << " s for n <= 10; ";
  });

  criterion(4, "I_ST equals the line-graph pair count on the corpus", [](Outcome& o) {
    std::uint64_t count = 0;
    for_each_corpus_item([&](int n, const std::string& labels) {
      const auto p = EdgePartition::from_string(n, labels);
      const auto d = oracle::degrees(n, labels);
      const auto sums = incidence_sums(degree_profile(p));
      const auto line = incidence_linegraph_oracle(p);
      if (sums.st != line || sums.st != oracle::dot(d.s, d.t) || sums.zt != oracle::dot(d.z, d.t) ||
          sums.zs != oracle::dot(d.z, d.s))
        o.fail(format_partition(p));
      ++count;
    });
    o.detail << count << " partitions; ";
  });

  criterion(5, "Lemma 1 rewriting identities on the corpus", [](Outcome& o) {
    std::uint64_t count = 0;
    for_each_corpus_item([&](int n, const std::string& labels) {
      const auto p = EdgePartition::from_string(n, labels);
      const auto d = oracle::degrees(n, labels);
      auto rewrite = [&](const std::vector<int>& x) {
        std::int64_t lin = 0, sq = 0;
        for (int v : x) lin += v, sq += static_cast<std::int64_t>(v) * v;
        return (n - 1) * lin - sq;
      };
      const auto st = oracle::dot(d.s, d.t), zt = oracle::dot(d.z, d.t), zs = oracle::dot(d.z, d.s);
      const auto diag = lemma_diagnostics(degree_profile(p));
      if (zt - st != rewrite(d.z) - rewrite(d.s) || zs - st != rewrite(d.z) - rewrite(d.t) || !diag.identities_hold ||
          diag.lhs_rewrite_z != rewrite(d.z) || diag.rhs_rewrite_s != rewrite(d.s) || diag.rhs_rewrite_t != rewrite(d.t))
        o.fail(format_partition(p));
      ++count;
    });
    o.detail << count << " partitions; ";
  });

  criterion(6, "structural facts on the theorem-mode corpus", [](Outcome& o) {
    std::uint64_t count = 0;
    for_each_corpus_item([&](int n, const std::string& labels) {
      const auto p = EdgePartition::from_string(n, labels);
      if (p.mode() != PartitionMode::theorem) return;
      const auto d = oracle::degrees(n, labels);
      std::vector<int> P, Q, R;
      for (int v = 0; v < n; ++v) {
        if (d.s[v] == 0) P.push_back(v);
        if (d.t[v] == 0) Q.push_back(v);
        if (d.s[v] != 0 && d.t[v] != 0) R.push_back(v);
      }
      bool ok = true;
      for (int a : P)
        for (int b : Q) ok = ok && a != b && labels[static_cast<std::size_t>(CompleteGraph(n).edge_id(a, b))] == 'Z';
      ok = ok && static_cast<int>(P.size() * Q.size()) <= n - 3;
      std::int64_t sq = 0, sum_r = 0;
      for (int v = 0; v < n; ++v) sq += static_cast<std::int64_t>(d.z[v]) * d.z[v];
      for (int v : R) sum_r += d.z[v];
      ok = ok && sq + 6 >= 2 * sum_r;
      const auto f = structural_facts(p);
      if (!ok || !f.all_facts_hold() || f.P != P || f.Q != Q) o.fail(format_partition(p));
      ++count;
    });
    o.detail << count << " theorem-mode partitions; ";
  });

  criterion(7, "Eulerian orientations of J(4,2), J(5,2), J(6,2) are strongly (n-2)-connected", [](Outcome& o) {
    auto lg4 = std::make_shared<const LineGraph>(build_line_graph(4));
    std::set<std::string> brute;
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
      std::vector<int> bal(6, 0);
      std::string bits;
      for (int e = 0; e < 12; ++e) {
        auto [a, b] = lg4->graph.edges[static_cast<std::size_t>(e)];
        const bool rev = mask >> e & 1;
        bits.push_back(rev ? '1' : '0');
        bal[static_cast<std::size_t>(rev ? b : a)] += 1;
        bal[static_cast<std::size_t>(rev ? a : b)] -= 1;
      }
      if (std::all_of(bal.begin(), bal.end(), [](int x) { return x == 0; })) brute.insert(bits);
    }
    bool truncated = false;
    const auto all = all_eulerian_orientations(lg4, 1u << 20, &truncated);
    std::set<std::string> got;
    for (const auto& x : all) got.insert(x.bit_string());
    if (truncated || got != brute || got.size() != all.size()) o.fail("J(4,2) enumeration differs from brute force");
    auto certify = [&](const Orientation& x, int k) {
      const auto d = x.digraph();
      const auto c = is_strongly_k_connected(d, k);
      if (!c.certified) o.fail("refuted orientation " + x.bit_string());
      const auto problem = validate_certificate(d, c);
      if (!problem.empty()) o.fail("invalid certificate: " + problem);
    };
    for (const auto& x : all) certify(x, 2);
    o.detail << all.size() << " orientations of J(4,2) (brute force " << brute.size() << ") certified at k=2; ";
    for (int n : {5, 6}) {
      auto lg = std::make_shared<const LineGraph>(build_line_graph(n));
      for (int i = 0; i < kOrientationSamples; ++i) {
        const auto x = eulerian_orientation(lg, static_cast<std::uint64_t>(1000 * n + i));
        if (!x.is_eulerian()) o.fail("unbalanced orientation");
        certify(x, n - 2);
      }
      o.detail << kOrientationSamples << " of J(" << n << ",2) at k=" << n - 2 << "; ";
    }
  });

  criterion(8, "Menger consistency on random digraphs with <= 6 vertices", [](Outcome& o) {
    std::mt19937_64 rng(4242);
    std::uint64_t queries = 0;
    for (int g = 0; g < kMengerGraphs; ++g) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const int density = 1 + static_cast<int>(rng() % 4);
      std::vector<std::vector<bool>> a(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n)));
      Digraph d;
      d.out.resize(static_cast<std::size_t>(n));
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (x != y && static_cast<int>(rng() % 5) < density) {
            a[x][y] = true;
            d.out[static_cast<std::size_t>(x)].push_back(y);
          }
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
          if (u == v) continue;
          ++queries;
          if (local_connectivity(d, u, v, n).paths_found != oracle::brute_connectivity(a, u, v))
            o.fail("pair count mismatch");
        }
    }
    o.detail << kMengerGraphs << " digraphs, " << queries << " ordered pairs; ";
  });

  criterion(9, "byte-identical JSON across repeats and worker counts", [](Outcome& o) {
    const std::vector<std::vector<std::string>> runs{
        {"search", "--n", "10", "--mode", "random", "--samples", "100000", "--seed", "7"},
        {"search", "--n", "6", "--mode", "exhaustive"},
        {"search", "--n", "6", "--mode", "exhaustive", "--symmetry"},
        {"search", "--n", "12", "--mode", "profile", "--p", "3", "--q", "2"},
        {"orient", "--n", "5", "--count", "5", "--seed", "3"},
        {"sharpness", "--n", "9"},
        {"expansion", "--n", "6", "--size-cap", "2", "--samples", "20", "--seed", "4"}};
    for (const auto& base : runs) {
      std::string first;
      for (const char* workers : {"1", "1", "4"}) {
        auto args = base;
        args.insert(args.end(), {"--workers", workers, "--format", "jsonl"});
        const auto out = cli_json(args);
        if (first.empty())
          first = out;
        else if (out != first)
          o.fail(base[0] + " " + base[1] + " " + base[2] + " differs");
      }
    }
    o.detail << runs.size() << " commands x 3 runs (workers 1, 1, 4); ";
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
