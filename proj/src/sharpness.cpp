#include "knlab/sharpness.hpp"

#include "knlab/incidence.hpp"

namespace knlab {

bool SharpnessReport::matches_closed_forms() const noexcept {
  const std::int64_t k = n - 3;
  return i_st == 2 * k && i_zs == 2 * k + 2 && i_zt >= k * (n - 1);
}

EdgePartition sharp_family(int n) {
  if (n < 5) throw std::domain_error("sharp_family requires n >= 5, got n=" + std::to_string(n));
  std::vector<std::pair<Vertex, Vertex>> s_edges = {{0, 1}, {1, 2}};
  std::vector<std::pair<Vertex, Vertex>> z_edges = {{0, 2}};
  for (Vertex i = 3; i < n; ++i) z_edges.emplace_back(1, i);
  return EdgePartition::from_edge_lists(n, s_edges, z_edges);
}

SharpnessReport verify_sharpness(int n) {
  const auto sums = incidence_sums(degree_profile(sharp_family(n)));
  SharpnessReport r;
  r.n = n;
  r.i_st = sums.st;
  r.i_zs = sums.zs;
  r.i_zt = sums.zt;
  r.violates_min_bound = sums.st < sums.min_z();
  return r;
}

}  // namespace knlab
