#pragma once

// Searching for partitions that break  I_ST >= min(I_ZT, I_ZS)  with |Z| = n-3.
//
// All three modes split their work into units with a fixed, worker-independent
// numbering (Z-rank ranges, Z isomorphism classes, sample blocks, z
// multisets). Unit results are merged in unit order, so reports do not depend
// on the worker count or scheduling. A checkpoint records the merged prefix.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knlab/kncore.hpp"

namespace knlab {

enum class SearchMode { exhaustive, random, profile };

std::string_view to_string(SearchMode mode);
SearchMode search_mode_from_string(std::string_view s);

// Hard caps on exhaustive enumeration unless allow_large is set.
inline constexpr int kExhaustiveMaxN = 7;
inline constexpr int kExhaustiveSymmetricMaxN = 8;
// Samples per random-search unit; each block draws from its own stream.
inline constexpr std::uint64_t kRandomBlockSize = 4096;
// Checkpoint cadence.
inline constexpr std::uint64_t kCheckpointEveryItems = std::uint64_t{1} << 20;
inline constexpr double kCheckpointEverySeconds = 10.0;

struct SearchConfig {
  int n = 0;
  SearchMode mode = SearchMode::exhaustive;

  bool use_symmetry = false;  // exhaustive
  std::uint64_t samples = 0;  // random
  std::uint64_t seed = 0;     // random
  int p = 0;                  // profile
  int q = 0;                  // profile
  bool prune = true;          // profile: skip subtrees with a certified bound
  bool realize_all = false;   // profile: realize every profile, not only violators
  bool collect_profiles = false;  // profile + realize_all: keep the realizable set

  bool allow_large = false;
  unsigned workers = 1;
  std::string checkpoint_path;              // empty: no checkpointing
  std::optional<std::uint64_t> unit_budget;  // stop (resumably) after this many units
};

// Thrown for configurations the search refuses to run.
class SearchConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SearchCounters {
  std::uint64_t partitions_checked = 0;
  std::uint64_t classes_checked = 0;        // exhaustive + symmetry
  std::uint64_t raw_equivalent = 0;         // exhaustive + symmetry: sum of class sizes
  std::uint64_t profiles_checked = 0;       // profile: covered, evaluated or bound-certified
  std::uint64_t profiles_evaluated = 0;     // profile: leaves evaluated one by one
  std::uint64_t subtrees_pruned = 0;        // profile
  std::uint64_t relaxation_violations = 0;  // profile
  std::uint64_t realizable_violations = 0;  // profile
  std::uint64_t realizable_profiles = 0;    // profile + realize_all

  SearchCounters& operator+=(const SearchCounters& o);
  friend bool operator==(const SearchCounters&, const SearchCounters&) = default;
};

struct SearchReport {
  SearchConfig config;
  SearchCounters counters;
  std::vector<EdgePartition> violations;                // self-certifying witnesses
  std::vector<DegreeProfile> relaxation_samples;       // first few relaxation violators (sorted)
  std::vector<DegreeProfile> realizable_set;           // collect_profiles only
  std::uint64_t units_total = 0;
  std::uint64_t units_done = 0;
  bool complete = false;
  bool vacuous = false;
  std::string vacuous_reason;
  std::string checkpoint_id;
  double wall_time_s = 0.0;  // metadata; excluded from determinism comparisons
};

inline constexpr std::size_t kMaxStoredViolations = 1000;
inline constexpr std::size_t kMaxRelaxationSamples = 16;

// Closed-form count of theorem-mode partitions: C(m, n-3) * 2^(m-n+3).
std::uint64_t theorem_partition_count(int n);

SearchReport run_search(const SearchConfig& config);

SearchReport exhaustive_search(int n, bool use_symmetry, unsigned workers = 1);
SearchReport random_search(int n, std::uint64_t samples, std::uint64_t seed, unsigned workers = 1);
SearchReport profile_search(int n, int p, int q, unsigned workers = 1);

// Every sorted degree profile realized by some theorem-mode partition of K_n
// with exactly p vertices of s-degree 0 and q of t-degree 0, by enumeration of
// all partitions. Intended for small n cross-checks.
std::vector<DegreeProfile> enumerated_profiles(int n, int p, int q);

}  // namespace knlab
