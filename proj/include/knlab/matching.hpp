#pragma once

// Maximum matching in general graphs (Edmonds' blossom algorithm) and the
// f-factor reduction built on it.

#include <optional>
#include <utility>
#include <vector>

namespace knlab {

// Returns mate[v] (or -1) for a maximum-cardinality matching of the simple
// graph on `vertex_count` vertices with the given adjacency lists.
std::vector<int> maximum_matching(const std::vector<std::vector<int>>& adjacency);

// Finds a spanning subgraph of the host graph in which vertex v has degree
// f[v] exactly, or nullopt if none exists. Host edges are given as pairs over
// 0..f.size()-1; the result lists indices into `host_edges`.
std::optional<std::vector<int>> find_f_factor(int vertex_count, const std::vector<std::pair<int, int>>& host_edges,
                                              const std::vector<int>& f);

}  // namespace knlab
