#include "knlab/incidence.hpp"

namespace knlab {

namespace {

std::int64_t dot(const std::vector<int>& a, const std::vector<int>& b) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<std::int64_t>(a[i]) * b[i];
  return acc;
}

std::int64_t rewrite(int n, const std::vector<int>& d) {
  std::int64_t sum = 0, sq = 0;
  for (int x : d) {
    sum += x;
    sq += static_cast<std::int64_t>(x) * x;
  }
  return static_cast<std::int64_t>(n - 1) * sum - sq;
}

void require_theorem_mode(const EdgePartition& p) {
  if (p.mode() != PartitionMode::theorem) {
    throw ModeError("requires theorem mode (|Z| = n-3 = " + std::to_string(p.n() - 3) + "), got |Z| = " +
                    std::to_string(p.count(Label::Z)));
  }
}

}  // namespace

IncidenceSums incidence_sums(const DegreeProfile& d) {
  return {dot(d.s, d.t), dot(d.z, d.t), dot(d.z, d.s)};
}

LemmaDiagnostics lemma_diagnostics(const DegreeProfile& d) {
  const auto sums = incidence_sums(d);
  LemmaDiagnostics out;
  const std::int64_t n = d.n;
  out.lhs_rewrite_z = rewrite(d.n, d.z);
  out.rhs_rewrite_t = rewrite(d.n, d.t);
  out.rhs_rewrite_s = rewrite(d.n, d.s);
  const std::int64_t sq_z = dot(d.z, d.z);
  out.twice_half_sq_z_plus_ist = sq_z + 2 * sums.st;
  out.twice_bound = 2 * (n - 1) * (n - 3);

  int p = 0, q = 0;
  std::int64_t sum_r = 0;
  for (std::size_t i = 0; i < d.s.size(); ++i) {
    const bool in_p = d.s[i] == 0, in_q = d.t[i] == 0;
    p += in_p;
    q += in_q;
    if (!in_p && !in_q) sum_r += d.z[i];
  }
  out.z1_lhs_doubled = sq_z + 6;
  out.z1_rhs_doubled = 2 * sum_r;
  out.pq_product = static_cast<std::int64_t>(p) * q;
  out.lemma3_holds = out.z1_lhs_doubled >= out.z1_rhs_doubled;

  out.identities_hold = (sums.zt - sums.st == out.lhs_rewrite_z - out.rhs_rewrite_s) &&
                        (sums.zs - sums.st == out.lhs_rewrite_z - out.rhs_rewrite_t);

  out.contradiction_hypothesis = sums.st < sums.zt && sums.st < sums.zs;
  if (out.contradiction_hypothesis) {
    out.implies_rewrite_t = out.lhs_rewrite_z > out.rhs_rewrite_t;
    out.implies_rewrite_s = out.lhs_rewrite_z > out.rhs_rewrite_s;
    out.implies_sum_bound = out.twice_half_sq_z_plus_ist < out.twice_bound;
  }
  return out;
}

IncidenceReport check_theorem1(const EdgePartition& partition) {
  require_theorem_mode(partition);
  const auto d = degree_profile(partition);
  IncidenceReport r;
  r.n = partition.n();
  r.mode = partition.mode();
  r.sums = incidence_sums(d);
  r.theorem_holds = r.sums.bound_holds();
  for (std::size_t i = 0; i < d.s.size(); ++i) {
    r.p += d.s[i] == 0;
    r.q += d.t[i] == 0;
  }
  r.diagnostics = lemma_diagnostics(d);
  return r;
}

StructuralReport structural_facts(const EdgePartition& partition) {
  require_theorem_mode(partition);
  const int n = partition.n();
  const auto d = degree_profile(partition);
  StructuralReport r;
  std::vector<bool> in_p(static_cast<std::size_t>(n)), in_q(static_cast<std::size_t>(n));
  r.p_q_disjoint = true;
  for (Vertex v = 0; v < n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    in_p[i] = d.s[i] == 0;
    in_q[i] = d.t[i] == 0;
    if (in_p[i]) r.P.push_back(v);
    if (in_q[i]) r.Q.push_back(v);
    if (in_p[i] && in_q[i]) r.p_q_disjoint = false;
    if (!in_p[i] && !in_q[i]) r.R.push_back(v);
  }
  r.pq_edges_in_z = true;
  for (Vertex a : r.P)
    for (Vertex b : r.Q)
      if (a != b && partition.label(a, b) != Label::Z) r.pq_edges_in_z = false;
  const std::int64_t p = static_cast<std::int64_t>(r.P.size()), q = static_cast<std::int64_t>(r.Q.size());
  r.pq_at_most_n_minus_3 = p * q <= n - 3;
  r.lemma3 = lemma_diagnostics(d).lemma3_holds;
  r.sqrt_bound_holds = (p + q) * (p + q) <= 4 * static_cast<std::int64_t>(n - 3);
  return r;
}

std::int64_t incidence_linegraph_oracle(const EdgePartition& partition) {
  const auto& g = partition.graph();
  const auto s_edges = partition.edges_with(Label::S);
  const auto t_edges = partition.edges_with(Label::T);
  std::int64_t count = 0;
  for (EdgeId e : s_edges) {
    auto [a, b] = g.endpoints(e);
    for (EdgeId f : t_edges) {
      auto [c, d] = g.endpoints(f);
      if (a == c || a == d || b == c || b == d) ++count;
    }
  }
  return count;
}

}  // namespace knlab
