#pragma once

// Vertex-disjoint directed paths by unit-capacity max-flow on the split graph,
// and strong k-connectivity certificates built from them.
//
// Split construction for a query (u, v): vertex x becomes x_in -> x_out with
// capacity 1 (u and v are not split: the source is u_out, the sink v_in);
// every arc x -> y becomes x_out -> y_in with capacity 1. A direct arc u -> v
// therefore counts as one path.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace knlab {

struct Digraph {
  std::vector<std::vector<int>> out;  // sorted successor lists

  int size() const noexcept { return static_cast<int>(out.size()); }
  bool has_arc(int a, int b) const;
  int out_degree(int v) const { return static_cast<int>(out.at(static_cast<std::size_t>(v)).size()); }
  std::vector<int> in_degrees() const;
};

struct LocalConnectivity {
  int paths_found = 0;                  // min(limit, max number of disjoint paths)
  std::vector<std::vector<int>> paths;  // each u, ..., v
  // When paths_found < limit: vertices meeting every u -> v path other than
  // the direct arc, and whether the direct arc u -> v is part of the cut.
  std::vector<int> separator;
  bool direct_arc_in_cut = false;
};

// Maximum number of internally vertex-disjoint u -> v paths, stopping once
// `limit` have been found. Requires u != v.
LocalConnectivity local_connectivity(const Digraph& g, int u, int v, int limit);

struct PairPolicy {
  enum class Kind { all_pairs, sampled };
  Kind kind = Kind::all_pairs;
  std::uint64_t count = 0;
  std::uint64_t seed = 0;

  static PairPolicy all() { return {}; }
  static PairPolicy sampled(std::uint64_t count, std::uint64_t seed) { return {Kind::sampled, count, seed}; }
};

struct PairPaths {
  int u = 0;
  int v = 0;
  std::vector<std::vector<int>> paths;
};

struct Refutation {
  int u = 0;
  int v = 0;
  std::vector<int> separator;  // |separator| < k, excludes u and v
};

struct ConnectivityCertificate {
  int k = 0;
  bool certified = false;
  bool all_pairs = true;  // sampled certificates are not proofs
  std::vector<PairPaths> pairs;
  std::optional<Refutation> refutation;
};

// Throws std::invalid_argument for k < 1 or, with all pairs, k > |V| - 2.
ConnectivityCertificate is_strongly_k_connected(const Digraph& g, int k, const PairPolicy& policy = PairPolicy::all());

// Re-checks a certificate without the flow code: path systems by direct arc
// and disjointness scans, separators by breadth-first reachability. Returns
// an empty string when valid, otherwise the first problem found.
std::string validate_certificate(const Digraph& g, const ConnectivityCertificate& cert);

// True iff v is reachable from u after deleting `removed` vertices.
bool reachable_without(const Digraph& g, int u, int v, const std::vector<int>& removed);

}  // namespace knlab
