#pragma once

// Canonical forms under vertex relabeling (and, for partitions, the global
// S <-> T exchange, which fixes I_ST and swaps I_ZT with I_ZS).

#include <cstdint>
#include <string>
#include <vector>

#include "knlab/kncore.hpp"

namespace knlab {

// Above this n, canonical_key falls back to a non-injective class hash.
inline constexpr int kExactCanonicalMaxN = 8;

struct CanonicalKey {
  std::string bytes;
  bool exact = false;  // false: bucketing hash only, never used to skip work

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

CanonicalKey canonical_key(const EdgePartition& p);

// Same construction with `exact` forced on; cost grows with the product of
// factorials of the invariant cells.
CanonicalKey exact_canonical_key(const EdgePartition& p);

// Image of p under the vertex relabeling v -> perm[v], optionally exchanging
// S and T.
EdgePartition relabel(const EdgePartition& p, const std::vector<Vertex>& perm, bool swap_st);

// An isomorphism class of k-edge graphs on n labelled vertices.
struct EdgeSetClass {
  std::vector<EdgeId> edges;                  // canonical representative, sorted
  std::vector<std::vector<Vertex>> automorphisms;  // all of Aut, identity included
  std::uint64_t orbit_size = 0;               // n! / |Aut|
};

// Every isomorphism class of k-edge subgraphs of K_n, sorted by representative.
std::vector<EdgeSetClass> edge_set_classes(int n, int k);

std::uint64_t factorial64(int n);

}  // namespace knlab
