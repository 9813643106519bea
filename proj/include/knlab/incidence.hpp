#pragma once

// Incidence sums of a three-way partition and the quantities used to reason
// about the inequality  sum s_i t_i >= min(sum z_i t_i, sum z_i s_i)
// when |Z| = n-3.

#include <cstdint>
#include <vector>

#include "knlab/kncore.hpp"

namespace knlab {

struct IncidenceSums {
  std::int64_t st = 0;  // sum s_i t_i
  std::int64_t zt = 0;  // sum z_i t_i
  std::int64_t zs = 0;  // sum z_i s_i

  std::int64_t min_z() const noexcept { return zt < zs ? zt : zs; }
  bool bound_holds() const noexcept { return st >= min_z(); }

  friend bool operator==(const IncidenceSums&, const IncidenceSums&) = default;
};

IncidenceSums incidence_sums(const DegreeProfile& profile);

// Quantities from rewriting t_i = n-1-s_i-z_i. Anything involving z_i^2 / 2
// is stored doubled so that everything stays integral.
struct LemmaDiagnostics {
  std::int64_t lhs_rewrite_z = 0;  // (n-1) sum z - sum z^2
  std::int64_t rhs_rewrite_t = 0;  // (n-1) sum t - sum t^2
  std::int64_t rhs_rewrite_s = 0;  // (n-1) sum s - sum s^2
  std::int64_t twice_half_sq_z_plus_ist = 0;  // sum z^2 + 2 I_ST
  std::int64_t twice_bound = 0;               // 2 (n-1)(n-3)
  std::int64_t z1_lhs_doubled = 0;            // sum z^2 + 6
  std::int64_t z1_rhs_doubled = 0;            // 2 sum_{i in R} z_i
  std::int64_t pq_product = 0;

  // I_ZT - I_ST == lhs_rewrite_z - rhs_rewrite_s and
  // I_ZS - I_ST == lhs_rewrite_z - rhs_rewrite_t.
  bool identities_hold = false;

  // Both strict inequalities I_ST < I_ZT and I_ST < I_ZS at once.
  bool contradiction_hypothesis = false;
  // Each conditional claim evaluated as an implication from the hypothesis;
  // vacuously true when the hypothesis fails.
  bool implies_rewrite_t = true;  // lhs_rewrite_z > rhs_rewrite_t
  bool implies_rewrite_s = true;  // lhs_rewrite_z > rhs_rewrite_s
  bool implies_sum_bound = true;  // sum z^2 / 2 + I_ST < (n-1)(n-3)

  bool lemma3_holds = false;  // sum z^2 / 2 + 3 >= sum_R z
};

LemmaDiagnostics lemma_diagnostics(const DegreeProfile& profile);

struct IncidenceReport {
  int n = 0;
  PartitionMode mode = PartitionMode::theorem;
  IncidenceSums sums;
  bool theorem_holds = false;
  int p = 0;  // vertices with s_i = 0
  int q = 0;  // vertices with t_i = 0
  LemmaDiagnostics diagnostics;
};

// Throws ModeError unless the partition is in theorem mode.
IncidenceReport check_theorem1(const EdgePartition& partition);

struct StructuralReport {
  std::vector<Vertex> P;
  std::vector<Vertex> Q;
  std::vector<Vertex> R;
  bool p_q_disjoint = false;        // (a)
  bool pq_edges_in_z = false;       // (b)
  bool pq_at_most_n_minus_3 = false;  // (c)
  bool lemma3 = false;              // (d)
  // (p+q)^2 <= 4(n-3); reported, never asserted.
  bool sqrt_bound_holds = false;

  bool all_facts_hold() const noexcept { return p_q_disjoint && pq_edges_in_z && pq_at_most_n_minus_3 && lemma3; }
};

// Throws ModeError unless the partition is in theorem mode.
StructuralReport structural_facts(const EdgePartition& partition);

// Counts pairs (e, f) with e in S, f in T sharing an endpoint, by direct
// enumeration over edge pairs. Independent of the degree-vector route.
std::int64_t incidence_linegraph_oracle(const EdgePartition& partition);

}  // namespace knlab
