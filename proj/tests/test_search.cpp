#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <map>

#include "knlab/canonical.hpp"
#include "knlab/checkpoint.hpp"
#include "knlab/incidence.hpp"
#include "knlab/json_io.hpp"
#include "knlab/search.hpp"
#include "oracles.hpp"

using namespace knlab;

namespace {

// Every theorem-mode labels string of K_n, by choosing Z positions and then
// S/T bits for the rest.
template <typename Fn>
void for_each_theorem_labels(int n, Fn&& fn) {
  const int m = n * (n - 1) / 2;
  const int k = n - 3;
  std::vector<int> z(static_cast<std::size_t>(k));
  auto rec = [&](auto&& self, int i, int from) -> void {
    if (i == k) {
      std::string base(static_cast<std::size_t>(m), '?');
      std::vector<int> free;
      for (int j : z) base[static_cast<std::size_t>(j)] = 'Z';
      for (int e = 0; e < m; ++e)
        if (base[static_cast<std::size_t>(e)] == '?') free.push_back(e);
      for (std::uint32_t mask = 0; mask < (1u << free.size()); ++mask) {
        for (std::size_t b = 0; b < free.size(); ++b) base[static_cast<std::size_t>(free[b])] = (mask >> b & 1) ? 'T' : 'S';
        fn(base);
      }
      return;
    }
    for (int e = from; e < m; ++e) {
      z[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, e + 1);
    }
  };
  rec(rec, 0, 0);
}

std::string min_image(int n, const std::string& labels) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  const auto edges = oracle::edge_list(n);
  std::string best;
  do {
    for (int swap = 0; swap < 2; ++swap) {
      std::string img(labels.size(), '?');
      for (std::size_t e = 0; e < edges.size(); ++e) {
        int a = perm[static_cast<std::size_t>(edges[e].first)], b = perm[static_cast<std::size_t>(edges[e].second)];
        if (a > b) std::swap(a, b);
        const auto id = std::find(edges.begin(), edges.end(), std::pair{a, b}) - edges.begin();
        char c = labels[e];
        if (swap) c = c == 'S' ? 'T' : c == 'T' ? 'S' : c;
        img[static_cast<std::size_t>(id)] = c;
      }
      if (best.empty() || img < best) best = img;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Json deterministic(const SearchReport& r) { return to_json(r); }

}  // namespace

TEST_CASE("closed-form partition counts") {
  CHECK(theorem_partition_count(4) == 192);
  CHECK(theorem_partition_count(5) == 11520);
  CHECK(theorem_partition_count(6) == 1863680);
  for (int n = 3; n <= 6; ++n) {
    std::uint64_t count = 0;
    for_each_theorem_labels(n, [&](const std::string&) { ++count; });
    CHECK(count == theorem_partition_count(n));
  }
}

TEST_CASE("exhaustive search counts and finds nothing") {
  for (int n = 3; n <= 6; ++n) {
    const auto r = exhaustive_search(n, false);
    CHECK(r.counters.partitions_checked == theorem_partition_count(n));
    CHECK(r.violations.empty());
    CHECK(r.complete);
  }
}

TEST_CASE("symmetric search conserves the raw count") {
  for (int n = 3; n <= 6; ++n) {
    const auto r = exhaustive_search(n, true);
    CHECK(r.counters.raw_equivalent == theorem_partition_count(n));
    CHECK(r.counters.classes_checked == r.counters.partitions_checked);
    CHECK(r.violations.empty());
  }
}

TEST_CASE("canonical keys: symmetries and exactness at n = 4, 5") {
  const auto p = EdgePartition::from_edge_lists(4, {{0, 2}, {1, 2}}, {{0, 1}});
  CHECK(canonical_key(p) == canonical_key(relabel(p, {1, 0, 3, 2}, false)));
  CHECK(canonical_key(p) == canonical_key(relabel(p, {0, 1, 2, 3}, true)));
  const auto other = EdgePartition::from_edge_lists(5, {{0, 1}}, {{0, 2}, {3, 4}});
  const auto third = EdgePartition::from_edge_lists(5, {{0, 1}}, {{0, 2}, {0, 3}});
  CHECK(canonical_key(other) != canonical_key(third));
  CHECK(canonical_key(p).exact);

  for (int n = 4; n <= 5; ++n) {
    std::map<std::string, std::string> key_to_orbit;
    std::set<std::string> orbits;
    for_each_theorem_labels(n, [&](const std::string& labels) {
      const auto key = canonical_key(EdgePartition::from_string(n, labels)).bytes;
      const auto orbit = min_image(n, labels);
      orbits.insert(orbit);
      auto [it, fresh] = key_to_orbit.emplace(key, orbit);
      REQUIRE(it->second == orbit);
    });
    CHECK(key_to_orbit.size() == orbits.size());
    CHECK(exhaustive_search(n, true).counters.classes_checked == orbits.size());
  }
  std::mt19937_64 rng(8);
  const auto big = EdgePartition::from_string(10, oracle::random_theorem_labels(10, rng));
  CHECK(!canonical_key(big).exact);
  std::vector<Vertex> perm{9, 8, 7, 6, 5, 4, 3, 2, 1, 0};
  CHECK(canonical_key(big) == canonical_key(relabel(big, perm, true)));
}

TEST_CASE("random search is deterministic and worker independent") {
  const auto a = random_search(10, 10000, 42, 1);
  const auto b = random_search(10, 10000, 42, 1);
  const auto c = random_search(10, 10000, 42, 3);
  CHECK(deterministic(a) == deterministic(b));
  CHECK(deterministic(a) == deterministic(c));
  CHECK(a.counters.partitions_checked == 10000);
  CHECK(a.violations.empty());
  CHECK(deterministic(random_search(10, 10000, 43)) != deterministic(a));
  const auto tiny = random_search(3, 10, 1);
  CHECK(tiny.counters.partitions_checked == 10);
  CHECK(tiny.violations.empty());
  CHECK(random_search(12, 100000, 5).violations.empty());
}

TEST_CASE("exhaustive and profile reports do not depend on the worker count") {
  CHECK(deterministic(exhaustive_search(6, false, 1)) == deterministic(exhaustive_search(6, false, 4)));
  CHECK(deterministic(exhaustive_search(6, true, 1)) == deterministic(exhaustive_search(6, true, 3)));
  CHECK(deterministic(profile_search(11, 3, 2, 1)) == deterministic(profile_search(11, 3, 2, 4)));
}

TEST_CASE("profile search agrees with partition enumeration for n <= 6") {
  for (int n = 4; n <= 6; ++n) {
    std::map<std::pair<int, int>, std::set<DegreeProfile>> by_pq;
    for_each_theorem_labels(n, [&](const std::string& labels) {
      const auto d = oracle::degrees(n, labels);
      const int p = static_cast<int>(std::count(d.s.begin(), d.s.end(), 0));
      const int q = static_cast<int>(std::count(d.t.begin(), d.t.end(), 0));
      by_pq[{p, q}].insert(DegreeProfile{n, d.s, d.t, d.z}.sorted());
    });
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; q <= 3; ++q) {
        SearchConfig c;
        c.n = n;
        c.mode = SearchMode::profile;
        c.p = p;
        c.q = q;
        c.realize_all = true;
        c.collect_profiles = true;
        const auto r = run_search(c);
        const auto& want = by_pq[{p, q}];
        INFO("n=" << n << " p=" << p << " q=" << q);
        CHECK(r.counters.realizable_violations == 0);
        CHECK(r.violations.empty());
        CHECK(std::set<DegreeProfile>(r.realizable_set.begin(), r.realizable_set.end()) == want);
        CHECK(r.realizable_set.size() == want.size());
        const auto lib = enumerated_profiles(n, p, q);
        CHECK(std::set<DegreeProfile>(lib.begin(), lib.end()) == want);
        if (r.vacuous) CHECK(want.empty());
      }
    }
  }
}

TEST_CASE("pruning never changes the verdict") {
  for (int n = 6; n <= 9; ++n) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 1}, {2, 2}, {3, 0}, {3, 1}, {3, 2}, {3, 3}}) {
      SearchConfig c;
      c.n = n;
      c.mode = SearchMode::profile;
      c.p = p;
      c.q = q;
      const auto pruned = run_search(c);
      c.prune = false;
      const auto full = run_search(c);
      INFO("n=" << n << " p=" << p << " q=" << q);
      CHECK(pruned.counters.profiles_checked == full.counters.profiles_checked);
      CHECK(pruned.counters.realizable_violations == full.counters.realizable_violations);
      CHECK(full.counters.profiles_evaluated == full.counters.profiles_checked);
      CHECK(pruned.counters.profiles_evaluated <= full.counters.profiles_evaluated);
    }
  }
}

TEST_CASE("vacuous profile searches") {
  const auto r = profile_search(10, 4, 4);
  CHECK(r.vacuous);
  CHECK(r.complete);
  CHECK(r.counters.realizable_violations == 0);
  CHECK(r.vacuous_reason.find("16") != std::string::npos);
  CHECK(profile_search(5, 3, 3).vacuous);
}

TEST_CASE("checkpoint resume reproduces the uninterrupted report") {
  const auto dir = std::filesystem::temp_directory_path() / "knlab_test_ckpt";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);

  for (auto mode : {SearchMode::profile, SearchMode::random, SearchMode::exhaustive}) {
    SearchConfig c;
    c.mode = mode;
    c.n = mode == SearchMode::exhaustive ? 6 : 11;
    c.p = 3;
    c.q = 2;
    c.samples = 50000;
    c.seed = 99;
    const auto whole = run_search(c);

    c.checkpoint_path = (dir / (std::string(to_string(mode)) + ".json")).string();
    c.unit_budget = mode == SearchMode::profile ? 7 : 1;
    int rounds = 0;
    SearchReport part;
    do {
      part = run_search(c);
      ++rounds;
      REQUIRE(rounds < 100000);
    } while (!part.complete);
    INFO("mode " << to_string(mode));
    CHECK(rounds > 1);
    CHECK(to_json(part) == to_json(whole));
    CHECK(part.counters == whole.counters);

    // The finished checkpoint resumes to the same report with no more work.
    c.unit_budget.reset();
    CHECK(run_search(c).counters == whole.counters);

    // A different run refuses the file.
    c.seed = 100;
    c.p = 2;
    c.n = c.n + 1;
    CHECK_THROWS_AS(run_search(c), SearchConfigError);
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("configuration errors") {
  SearchConfig c;
  c.n = 8;
  CHECK_THROWS_AS(run_search(c), SearchConfigError);
  c.n = 2;
  CHECK_THROWS_AS(run_search(c), SearchConfigError);
  c.n = 5;
  c.mode = SearchMode::random;
  CHECK_THROWS_AS(run_search(c), SearchConfigError);
  CHECK_THROWS(search_mode_from_string("sideways"));
}
