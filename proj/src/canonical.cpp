#include "knlab/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "knlab/combinatorics.hpp"

namespace knlab {

namespace {

// Calls fn(perm) for every relabeling perm (vertex -> new label) that sends
// the vertices of each invariant cell onto that cell's block of positions.
// Cells are ordered by descending invariant.
template <typename Key, typename Fn>
void for_each_cell_relabeling(const std::vector<Key>& invariant, Fn&& fn) {
  const int n = static_cast<int>(invariant.size());
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
    return invariant[static_cast<std::size_t>(a)] > invariant[static_cast<std::size_t>(b)];
  });
  std::vector<std::pair<int, int>> cells;  // [begin, end) into order
  for (int i = 0; i < n;) {
    int j = i + 1;
    while (j < n && invariant[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        invariant[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  // `order` permuted within cells; position i receives vertex order[i].
  std::vector<Vertex> perm(static_cast<std::size_t>(n));
  for (;;) {
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    fn(perm);
    std::size_t c = 0;
    for (; c < cells.size(); ++c) {
      auto b = order.begin() + cells[c].first, e = order.begin() + cells[c].second;
      if (std::next_permutation(b, e)) break;
    }
    if (c == cells.size()) return;
  }
}

Label swap_label(Label c) {
  return c == Label::S ? Label::T : c == Label::T ? Label::S : Label::Z;
}

CanonicalKey build_key(const EdgePartition& p, bool exact) {
  const int n = p.n();
  const auto d = degree_profile(p);
  std::vector<std::tuple<int, int, int>> inv(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = {d.z[i], std::min(d.s[i], d.t[i]), std::max(d.s[i], d.t[i])};

  CanonicalKey key;
  key.exact = exact;
  key.bytes.push_back(exact ? 'E' : 'H');
  key.bytes.append(std::to_string(n));
  key.bytes.push_back(':');
  auto sorted_inv = inv;
  std::sort(sorted_inv.begin(), sorted_inv.end(), std::greater<>());
  for (auto [a, b, c] : sorted_inv) {
    key.bytes.push_back(static_cast<char>('0' + a));
    key.bytes.push_back(static_cast<char>('0' + b));
    key.bytes.push_back(static_cast<char>('0' + c));
  }
  if (!exact) return key;

  const auto& g = p.graph();
  std::string best;
  std::string img(static_cast<std::size_t>(g.edge_count()), 'T');
  for_each_cell_relabeling(inv, [&](const std::vector<Vertex>& perm) {
    for (int sw = 0; sw < 2; ++sw) {
      for (EdgeId e = 0; e < g.edge_count(); ++e) {
        auto [u, v] = g.endpoints(e);
        Label c = p.label(e);
        if (sw) c = swap_label(c);
        img[static_cast<std::size_t>(g.edge_id(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))] =
            static_cast<char>(c);
      }
      if (best.empty() || img < best) best = img;
    }
  });
  key.bytes.push_back(':');
  key.bytes.append(best);
  return key;
}

}  // namespace

std::uint64_t factorial64(int n) {
  std::uint64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

CanonicalKey canonical_key(const EdgePartition& p) { return build_key(p, p.n() <= kExactCanonicalMaxN); }

CanonicalKey exact_canonical_key(const EdgePartition& p) { return build_key(p, true); }

EdgePartition relabel(const EdgePartition& p, const std::vector<Vertex>& perm, bool swap_st) {
  const auto& g = p.graph();
  if (static_cast<int>(perm.size()) != p.n()) throw std::invalid_argument("relabel: permutation has wrong size");
  std::vector<Label> out(p.labels().size(), Label::T);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    const Label c = swap_st ? swap_label(p.label(e)) : p.label(e);
    out[static_cast<std::size_t>(g.edge_id(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))] = c;
  }
  return EdgePartition(g, std::move(out), p.mode());
}

std::vector<EdgeSetClass> edge_set_classes(int n, int k) {
  const CompleteGraph g(n);
  const int m = g.edge_count();
  if (k < 0 || k > m) throw std::domain_error("edge_set_classes: k out of range");

  auto canon = [&](const std::vector<EdgeId>& edges) {
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (EdgeId e : edges) {
      auto [u, v] = g.endpoints(e);
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
    // Refine degree by the sorted multiset of neighbour degrees.
    std::vector<std::vector<int>> inv(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) inv[static_cast<std::size_t>(v)].push_back(deg[static_cast<std::size_t>(v)]);
    for (EdgeId e : edges) {
      auto [u, v] = g.endpoints(e);
      inv[static_cast<std::size_t>(u)].push_back(deg[static_cast<std::size_t>(v)]);
      inv[static_cast<std::size_t>(v)].push_back(deg[static_cast<std::size_t>(u)]);
    }
    for (auto& row : inv) std::sort(row.begin() + 1, row.end(), std::greater<>());
    std::vector<EdgeId> best, img(edges.size());
    for_each_cell_relabeling(inv, [&](const std::vector<Vertex>& perm) {
      for (std::size_t i = 0; i < edges.size(); ++i) {
        auto [u, v] = g.endpoints(edges[i]);
        img[i] = g.edge_id(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    });
    return best;
  };

  std::set<std::vector<EdgeId>> reps;
  std::vector<int> comb(static_cast<std::size_t>(k));
  std::iota(comb.begin(), comb.end(), 0);
  do {
    reps.insert(k == 0 ? std::vector<EdgeId>{} : canon(comb));
  } while (k > 0 && next_combination(comb, m));

  std::vector<EdgeSetClass> out;
  const std::uint64_t nfact = factorial64(n);
  for (const auto& rep : reps) {
    EdgeSetClass cls;
    cls.edges = rep;
    std::vector<int> deg(static_cast<std::size_t>(n), 0);
    for (EdgeId e : rep) {
      auto [u, v] = g.endpoints(e);
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
    std::vector<bool> in_rep(static_cast<std::size_t>(m), false);
    for (EdgeId e : rep) in_rep[static_cast<std::size_t>(e)] = true;
    for_each_cell_relabeling(deg, [&](const std::vector<Vertex>& perm) {
      for (EdgeId e : rep) {
        auto [u, v] = g.endpoints(e);
        if (!in_rep[static_cast<std::size_t>(g.edge_id(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))])
          return;
      }
      cls.automorphisms.push_back(perm);
    });
    std::sort(cls.automorphisms.begin(), cls.automorphisms.end());
    cls.orbit_size = nfact / cls.automorphisms.size();
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace knlab
