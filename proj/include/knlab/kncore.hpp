#pragma once

// Complete graph K_n, its lexicographic edge indexing, three-way edge
// partitions (S, T, Z) and per-vertex class degrees.
//
// Vertices are 0-based (a vertex written v_i in 1-based notation is i-1 here).
// Edge (u, v) with u < v has id u*n - u*(u+1)/2 + (v - u - 1), so ids run over
// 0..m-1 in lexicographic order of the endpoint pair.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace knlab {

using Vertex = int;
using EdgeId = int;

enum class Label : char { S = 'S', T = 'T', Z = 'Z' };

// Thrown when a partition is used in the wrong mode (e.g. |Z| != n-3 where the
// incidence theorem's hypothesis is required).
class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed partition or orientation text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class CompleteGraph {
 public:
  explicit CompleteGraph(int n);

  int n() const noexcept { return n_; }
  int edge_count() const noexcept { return m_; }

  // Throws std::domain_error unless 0 <= u, v < n and u != v. The endpoints
  // may be given in either order.
  EdgeId edge_id(Vertex u, Vertex v) const;
  std::pair<Vertex, Vertex> endpoints(EdgeId e) const;

  friend bool operator==(const CompleteGraph&, const CompleteGraph&) = default;

 private:
  int n_;
  int m_;
  std::vector<std::pair<Vertex, Vertex>> ends_;
};

// theorem: |Z| = n-3 (the incidence theorem's hypothesis).
// general: any class sizes.
enum class PartitionMode { theorem, general };

std::string_view to_string(PartitionMode mode);

class EdgePartition {
 public:
  // Throws ModeError if mode is theorem and |Z| != n-3, std::invalid_argument
  // if the label count is not m.
  EdgePartition(CompleteGraph ctx, std::vector<Label> labels, PartitionMode mode);

  // Mode inferred from the Z count.
  static EdgePartition from_labels(int n, std::vector<Label> labels);
  static EdgePartition from_string(int n, std::string_view labels);

  // Builds a partition from explicit S and Z edge lists; everything else is T.
  static EdgePartition from_edge_lists(int n,
                                       const std::vector<std::pair<Vertex, Vertex>>& s_edges,
                                       const std::vector<std::pair<Vertex, Vertex>>& z_edges);

  const CompleteGraph& graph() const noexcept { return ctx_; }
  int n() const noexcept { return ctx_.n(); }
  PartitionMode mode() const noexcept { return mode_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  Label label(EdgeId e) const { return labels_.at(static_cast<std::size_t>(e)); }
  Label label(Vertex u, Vertex v) const { return label(ctx_.edge_id(u, v)); }
  int count(Label c) const noexcept;
  std::vector<EdgeId> edges_with(Label c) const;

  std::string label_string() const;

  friend bool operator==(const EdgePartition& a, const EdgePartition& b) {
    return a.ctx_ == b.ctx_ && a.labels_ == b.labels_;
  }

 private:
  CompleteGraph ctx_;
  std::vector<Label> labels_;
  PartitionMode mode_;
};

PartitionMode infer_mode(int n, int z_count) noexcept;

struct DegreeProfile {
  int n = 0;
  std::vector<int> s;
  std::vector<int> t;
  std::vector<int> z;

  // t is derived from s + t + z = n - 1.
  static DegreeProfile from_sz(int n, std::vector<int> s, std::vector<int> z);

  // Empty if all local invariants hold (lengths, ranges, s+t+z = n-1);
  // otherwise the first violated invariant.
  std::optional<std::string> local_violation() const;

  std::int64_t sum_s() const noexcept;
  std::int64_t sum_t() const noexcept;
  std::int64_t sum_z() const noexcept;

  // Vertices sorted by (s, t, z) descending; the profile of the relabeled
  // partition is the same for every vertex relabeling.
  DegreeProfile sorted() const;

  friend bool operator==(const DegreeProfile&, const DegreeProfile&) = default;
  friend auto operator<=>(const DegreeProfile& a, const DegreeProfile& b) {
    return std::tie(a.n, a.s, a.t, a.z) <=> std::tie(b.n, b.s, b.t, b.z);
  }
};

DegreeProfile degree_profile(const EdgePartition& p);

// --- Exact realization of a degree profile ---------------------------------

enum class RealizationReason { none, parity, bound, exhausted_search };

std::string_view to_string(RealizationReason r);

struct ProfileRealization {
  std::optional<EdgePartition> witness;  // set iff realizable
  RealizationReason reason = RealizationReason::none;
  std::string note;  // arithmetic witness for parity/bound failures
  bool via_two_stage = false;

  bool realizable() const noexcept { return witness.has_value(); }
};

// Decides whether some edge partition of K_n has exactly this profile.
// Exact for every n (the backtracking fallback is complete). Throws
// std::invalid_argument if the profile breaks its local invariants.
ProfileRealization realize_profile(const DegreeProfile& profile);

// Erdos-Gallai test for a simple-graph degree sequence. On failure, `why`
// (if given) receives a one-line arithmetic witness.
bool is_graphical(std::vector<int> degrees, std::string* why = nullptr);

// --- Partition text format --------------------------------------------------
//   n=<n> labels=<m characters over S, T, Z in edge-id order>

std::string format_partition(const EdgePartition& p);
EdgePartition parse_partition(std::string_view line, int line_no = 1);
// Reads every non-blank line. Throws ParseError on the first bad line.
std::vector<EdgePartition> read_partitions(std::istream& in);

}  // namespace knlab
