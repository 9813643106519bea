#pragma once

// Brute-force reference computations for tests. Nothing here calls into the
// library code it is compared against.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// All pairs (u, v), u < v, in the order the nested loops produce them.
inline std::vector<std::pair<int, int>> edge_list(int n) {
  std::vector<std::pair<int, int>> e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return e;
}

struct Degrees {
  std::vector<int> s, t, z;
};

inline Degrees degrees(int n, const std::string& labels) {
  Degrees d{std::vector<int>(n), std::vector<int>(n), std::vector<int>(n)};
  const auto e = edge_list(n);
  for (std::size_t i = 0; i < e.size(); ++i) {
    auto& vec = labels[i] == 'S' ? d.s : labels[i] == 'T' ? d.t : d.z;
    ++vec[e[i].first];
    ++vec[e[i].second];
  }
  return d;
}

inline std::int64_t dot(const std::vector<int>& a, const std::vector<int>& b) {
  std::int64_t r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += static_cast<std::int64_t>(a[i]) * b[i];
  return r;
}

// Labels string for the base-3 number `code` (digit i = edge i; 0=S 1=T 2=Z).
inline std::string labels_from_code(std::uint64_t code, int m) {
  std::string s(static_cast<std::size_t>(m), 'S');
  for (int i = 0; i < m; ++i, code /= 3) s[static_cast<std::size_t>(i)] = "STZ"[code % 3];
  return s;
}

inline std::uint64_t pow3(int m) {
  std::uint64_t r = 1;
  while (m-- > 0) r *= 3;
  return r;
}

// Random theorem-mode labels: n-3 distinct Z positions, the rest fair S/T.
inline std::string random_theorem_labels(int n, std::mt19937_64& rng) {
  const int m = n * (n - 1) / 2;
  std::vector<int> idx(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) idx[static_cast<std::size_t>(i)] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  std::string s(static_cast<std::size_t>(m), 'S');
  for (int i = 0; i < m; ++i) s[static_cast<std::size_t>(i)] = (rng() & 1) ? 'T' : 'S';
  for (int i = 0; i < n - 3; ++i) s[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = 'Z';
  return s;
}

// Degree sequences of all simple graphs on n <= 6 vertices, sorted
// descending.
inline std::set<std::vector<int>> graphical_sequences(int n) {
  const auto e = edge_list(n);
  std::set<std::vector<int>> out;
  for (std::uint32_t mask = 0; mask < (1u << e.size()); ++mask) {
    std::vector<int> d(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (mask >> i & 1) ++d[e[i].first], ++d[e[i].second];
    std::sort(d.rbegin(), d.rend());
    out.insert(d);
  }
  return out;
}

// Vertex connectivity from u to v in a digraph given as an adjacency matrix:
// with an arc u -> v, one plus the value without it; otherwise the smallest
// vertex set (avoiding u, v) whose deletion leaves v unreachable from u.
inline bool reach(const std::vector<std::vector<bool>>& a, int u, int v, std::uint32_t removed) {
  const int n = static_cast<int>(a.size());
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> stack{u};
  seen[static_cast<std::size_t>(u)] = true;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    if (x == v) return true;
    for (int y = 0; y < n; ++y) {
      if (!a[x][y] || seen[static_cast<std::size_t>(y)] || (removed >> y & 1)) continue;
      seen[static_cast<std::size_t>(y)] = true;
      stack.push_back(y);
    }
  }
  return false;
}

inline int brute_connectivity(std::vector<std::vector<bool>> a, int u, int v) {
  int bonus = 0;
  if (a[u][v]) {
    a[u][v] = false;
    bonus = 1;
  }
  const int n = static_cast<int>(a.size());
  int best = n;  // unreachable deletions never needed beyond n-2
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if ((mask >> u & 1) || (mask >> v & 1)) continue;
    const int size = __builtin_popcount(mask);
    if (size >= best) continue;
    if (!reach(a, u, v, mask)) best = size;
  }
  return bonus + best;
}

}  // namespace oracle
