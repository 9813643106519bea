#pragma once

// The line graph J(n,2) of K_n, its Eulerian orientations, the neighbourhood
// expansion condition min{k^2 - 1, (k-1)(|S|+1)} < |N(S)|, and the bridge
// from an edge partition of K_n to vertex sets of J(n,2).

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "knlab/flow.hpp"
#include "knlab/incidence.hpp"
#include "knlab/kncore.hpp"

namespace knlab {

struct UndirectedGraph {
  std::vector<std::vector<int>> adj;          // sorted
  std::vector<std::pair<int, int>> edges;     // (a, b), a < b, sorted

  int vertex_count() const noexcept { return static_cast<int>(adj.size()); }
  int edge_count() const noexcept { return static_cast<int>(edges.size()); }
  bool adjacent(int a, int b) const;

  static UndirectedGraph from_edges(int vertex_count, std::vector<std::pair<int, int>> edges);
};

struct LineGraph {
  int base_n = 0;
  UndirectedGraph graph;  // vertex i is edge i of K_n
};

// Two vertices are adjacent iff their K_n edges share an endpoint.
// Throws std::domain_error for n < 3.
LineGraph build_line_graph(int n);

// One bit per line-graph edge in canonical order; for edge (a, b) with a < b,
// bit 0 means a -> b and bit 1 means b -> a.
class Orientation {
 public:
  Orientation(std::shared_ptr<const LineGraph> lg, std::vector<std::uint8_t> reversed);

  const LineGraph& line_graph() const noexcept { return *lg_; }
  std::shared_ptr<const LineGraph> shared_graph() const noexcept { return lg_; }
  const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
  std::pair<int, int> arc(int edge_index) const;

  Digraph digraph() const;
  bool is_eulerian() const;
  std::string bit_string() const;

  friend bool operator==(const Orientation& a, const Orientation& b) { return a.bits_ == b.bits_; }

 private:
  std::shared_ptr<const LineGraph> lg_;
  std::vector<std::uint8_t> bits_;
};

// Orients edges along a Hierholzer walk over shuffled adjacency lists.
// Deterministic in the seed; not uniform over Eulerian orientations.
Orientation eulerian_orientation(std::shared_ptr<const LineGraph> lg, std::uint64_t seed);

struct EnumerationResult {
  std::uint64_t emitted = 0;
  bool truncated = false;
};

// Every Eulerian orientation, in increasing lexicographic order of the bit
// vector (bit 0 tried first), until `cap` have been emitted.
EnumerationResult enumerate_eulerian_orientations(const std::shared_ptr<const LineGraph>& lg, std::uint64_t cap,
                                                  const std::function<void(const Orientation&)>& emit);

std::vector<Orientation> all_eulerian_orientations(const std::shared_ptr<const LineGraph>& lg, std::uint64_t cap,
                                                   bool* truncated = nullptr);

// Orientation text format:
//   n=<n>
//   <one '0'/'1' per line-graph edge in canonical order>
std::string format_orientation(const Orientation& o);
Orientation parse_orientation(std::istream& in);

// ------------------------------------------------------------- expansion

struct ExpansionRecord {
  std::vector<int> members;
  int set_size = 0;
  int neighbourhood = 0;  // vertices outside S adjacent to S
  std::int64_t threshold = 0;
  bool satisfied = false;  // neighbourhood > threshold
};

struct ExpansionReport {
  std::string graph_id;
  int k = 0;
  int size_cap = 0;
  int max_size = 0;  // floor(V/2)
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<ExpansionRecord> records;
  bool all_satisfied = true;
  std::string coverage;
};

// min{k^2 - 1, (k-1)(|S|+1)}.
std::int64_t expansion_threshold(int k, int set_size);

int outer_neighbourhood_size(const UndirectedGraph& g, const std::vector<int>& members);

// All sets of size 1..size_cap exhaustively, then `samples` uniform sets of
// each larger size up to floor(V/2). Throws std::invalid_argument unless
// 1 <= size_cap <= V/2 and k >= 1.
ExpansionReport expansion_condition(const UndirectedGraph& g, std::string graph_id, int k, int size_cap,
                                    std::uint64_t samples, std::uint64_t seed);

// ---------------------------------------------------------------- bridge

struct BridgeReport {
  int n = 0;
  int k = 0;  // n - 2
  int size_s = 0;
  int size_t_ = 0;
  int size_z = 0;
  int neighbourhood_s = 0;     // |N(S^)| in J(n,2)
  int neighbourhood_s_in_t = 0;
  int neighbourhood_s_in_z = 0;
  IncidenceSums sums;
  std::int64_t min_kz_sz = 0;          // min{k|Z^|, |S^||Z^|}
  std::int64_t expansion_threshold = 0;  // min{k^2 - 1, (k-1)(|S^|+1)}
  bool neighbourhood_ge_min_kz = false;
  bool min_kz_gt_threshold = false;
};

// Reports every quantity of the partition-to-line-graph chain; asserts none.
BridgeReport theorem2_bridge_report(const EdgePartition& p);

}  // namespace knlab
