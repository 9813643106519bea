#include "knlab/matching.hpp"

#include <queue>
#include <stdexcept>

namespace knlab {

namespace {

// Edmonds' algorithm with explicit blossom contraction through base labels.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const std::vector<std::vector<int>>& adj)
      : adj_(adj), n_(static_cast<int>(adj.size())), mate_(adj.size(), -1), parent_(adj.size()), base_(adj.size()),
        used_(adj.size()), in_blossom_(adj.size()) {}

  std::vector<int> run() {
    // Greedy start shrinks the number of augmenting searches.
    for (int v = 0; v < n_; ++v) {
      if (mate_[at(v)] != -1) continue;
      for (int w : adj_[at(v)]) {
        if (mate_[at(w)] == -1) {
          mate_[at(v)] = w;
          mate_[at(w)] = v;
          break;
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (mate_[at(v)] != -1) continue;
      int end = find_augmenting_path(v);
      while (end != -1) {
        const int pv = parent_[at(end)];
        const int next = mate_[at(pv)];
        mate_[at(end)] = pv;
        mate_[at(pv)] = end;
        end = next;
      }
    }
    return mate_;
  }

 private:
  static std::size_t at(int v) { return static_cast<std::size_t>(v); }

  int lowest_common_base(int a, int b) {
    std::vector<bool> seen(at(n_), false);
    for (;;) {
      a = base_[at(a)];
      seen[at(a)] = true;
      if (mate_[at(a)] == -1) break;
      a = parent_[at(mate_[at(a)])];
    }
    for (;;) {
      b = base_[at(b)];
      if (seen[at(b)]) return b;
      b = parent_[at(mate_[at(b)])];
    }
  }

  void mark_path(int v, int b, int child) {
    while (base_[at(v)] != b) {
      in_blossom_[at(base_[at(v)])] = in_blossom_[at(base_[at(mate_[at(v)])])] = true;
      parent_[at(v)] = child;
      child = mate_[at(v)];
      v = parent_[at(mate_[at(v)])];
    }
  }

  int find_augmenting_path(int root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), -1);
    for (int i = 0; i < n_; ++i) base_[at(i)] = i;
    used_[at(root)] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      const int v = q.front();
      q.pop();
      for (int to : adj_[at(v)]) {
        if (base_[at(v)] == base_[at(to)] || mate_[at(v)] == to) continue;
        if (to == root || (mate_[at(to)] != -1 && parent_[at(mate_[at(to)])] != -1)) {
          const int cur = lowest_common_base(v, to);
          std::fill(in_blossom_.begin(), in_blossom_.end(), false);
          mark_path(v, cur, to);
          mark_path(to, cur, v);
          for (int i = 0; i < n_; ++i) {
            if (in_blossom_[at(base_[at(i)])]) {
              base_[at(i)] = cur;
              if (!used_[at(i)]) {
                used_[at(i)] = true;
                q.push(i);
              }
            }
          }
        } else if (parent_[at(to)] == -1) {
          parent_[at(to)] = v;
          if (mate_[at(to)] == -1) return to;
          used_[at(mate_[at(to)])] = true;
          q.push(mate_[at(to)]);
        }
      }
    }
    return -1;
  }

  const std::vector<std::vector<int>>& adj_;
  int n_;
  std::vector<int> mate_;
  std::vector<int> parent_;
  std::vector<int> base_;
  std::vector<bool> used_;
  std::vector<bool> in_blossom_;
};

}  // namespace

std::vector<int> maximum_matching(const std::vector<std::vector<int>>& adjacency) {
  return BlossomMatcher(adjacency).run();
}

std::optional<std::vector<int>> find_f_factor(int vertex_count, const std::vector<std::pair<int, int>>& host_edges,
                                              const std::vector<int>& f) {
  if (static_cast<int>(f.size()) != vertex_count) throw std::invalid_argument("f-factor: f has wrong length");
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(vertex_count));
  for (std::size_t j = 0; j < host_edges.size(); ++j) {
    auto [u, v] = host_edges[j];
    incident[static_cast<std::size_t>(u)].push_back(static_cast<int>(2 * j));
    incident[static_cast<std::size_t>(v)].push_back(static_cast<int>(2 * j + 1));
  }
  // Tutte gadget: edge j becomes nodes 2j (at u) and 2j+1 (at v) joined by an
  // edge; vertex v contributes deg(v) - f(v) hub nodes joined to every edge
  // node at v. Perfect matchings correspond to f-factors, with edge j chosen
  // iff 2j is matched to 2j+1.
  int node_count = static_cast<int>(2 * host_edges.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
  for (std::size_t j = 0; j < host_edges.size(); ++j) {
    adj[2 * j].push_back(static_cast<int>(2 * j + 1));
    adj[2 * j + 1].push_back(static_cast<int>(2 * j));
  }
  for (int v = 0; v < vertex_count; ++v) {
    const auto& ends = incident[static_cast<std::size_t>(v)];
    const int fv = f[static_cast<std::size_t>(v)];
    const int slack = static_cast<int>(ends.size()) - fv;
    if (fv < 0 || slack < 0) return std::nullopt;
    for (int h = 0; h < slack; ++h) {
      const int hub = node_count++;
      adj.emplace_back();
      for (int e : ends) {
        adj.back().push_back(e);
        adj[static_cast<std::size_t>(e)].push_back(hub);
      }
    }
  }
  const auto mate = maximum_matching(adj);
  for (int x : mate)
    if (x == -1) return std::nullopt;
  std::vector<int> chosen;
  for (std::size_t j = 0; j < host_edges.size(); ++j)
    if (mate[2 * j] == static_cast<int>(2 * j + 1)) chosen.push_back(static_cast<int>(j));
  return chosen;
}

}  // namespace knlab
