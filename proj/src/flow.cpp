#include "knlab/flow.hpp"

#include <algorithm>
#include <climits>
#include <queue>
#include <set>
#include <stdexcept>

#include "knlab/rng.hpp"

namespace knlab {

namespace {

struct FlowArc {
  int to;
  int cap;
  int rev;
  bool forward;
};

class SplitNetwork {
 public:
  SplitNetwork(const Digraph& g, int u, int v) : u_(u), v_(v), nodes_(2 * static_cast<std::size_t>(g.size())) {
    for (int x = 0; x < g.size(); ++x) {
      if (x != u && x != v) add(in(x), out(x), 1);
      for (int y : g.out[static_cast<std::size_t>(x)]) {
        if (x == v || y == u) continue;  // cannot lie on a simple u -> v path
        add(out(x), in(y), 1);
      }
    }
  }

  static int in(int x) { return 2 * x; }
  static int out(int x) { return 2 * x + 1; }

  int max_flow(int limit) {
    int flow = 0;
    while (flow < limit && augment()) ++flow;
    return flow;
  }

  // Residual reachability from the source after max_flow.
  std::vector<bool> source_side() const {
    std::vector<bool> seen(nodes_.size(), false);
    std::queue<int> q;
    q.push(out(u_));
    seen[static_cast<std::size_t>(out(u_))] = true;
    while (!q.empty()) {
      const int a = q.front();
      q.pop();
      for (const auto& e : nodes_[static_cast<std::size_t>(a)]) {
        if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          q.push(e.to);
        }
      }
    }
    return seen;
  }

  // Decomposes the flow into vertex paths.
  std::vector<std::vector<int>> paths(int count) {
    std::vector<std::vector<int>> out_paths;
    for (int i = 0; i < count; ++i) {
      std::vector<int> path{u_};
      int node = out(u_);
      while (node != in(v_)) {
        bool moved = false;
        for (auto& e : nodes_[static_cast<std::size_t>(node)]) {
          // Forward arcs with flow have a positive-capacity reverse.
          if (!e.forward) continue;
          auto& back = nodes_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)];
          if (back.cap <= 0) continue;
          --back.cap;  // consume one unit
          node = e.to;
          moved = true;
          break;
        }
        if (!moved) throw std::logic_error("flow decomposition failed");
        if (node % 2 == 0) {
          const int x = node / 2;
          path.push_back(x);
          if (x != v_) node = out(x);
        }
      }
      out_paths.push_back(std::move(path));
    }
    return out_paths;
  }

 private:
  void add(int a, int b, int cap) {
    auto& na = nodes_[static_cast<std::size_t>(a)];
    auto& nb = nodes_[static_cast<std::size_t>(b)];
    na.push_back({b, cap, static_cast<int>(nb.size()), true});
    nb.push_back({a, 0, static_cast<int>(na.size()) - 1, false});
  }

  bool augment() {
    const int s = out(u_), t = in(v_);
    std::vector<std::pair<int, int>> prev(nodes_.size(), {-1, -1});
    std::vector<bool> seen(nodes_.size(), false);
    std::queue<int> q;
    q.push(s);
    seen[static_cast<std::size_t>(s)] = true;
    while (!q.empty() && !seen[static_cast<std::size_t>(t)]) {
      const int a = q.front();
      q.pop();
      const auto& list = nodes_[static_cast<std::size_t>(a)];
      for (std::size_t i = 0; i < list.size(); ++i) {
        const auto& e = list[i];
        if (e.cap > 0 && !seen[static_cast<std::size_t>(e.to)]) {
          seen[static_cast<std::size_t>(e.to)] = true;
          prev[static_cast<std::size_t>(e.to)] = {a, static_cast<int>(i)};
          q.push(e.to);
        }
      }
    }
    if (!seen[static_cast<std::size_t>(t)]) return false;
    for (int x = t; x != s;) {
      auto [a, i] = prev[static_cast<std::size_t>(x)];
      auto& e = nodes_[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
      e.cap -= 1;
      nodes_[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(e.rev)].cap += 1;
      x = a;
    }
    return true;
  }

  int u_;
  int v_;
  std::vector<std::vector<FlowArc>> nodes_;
};

// With a direct arc u -> v, a cut of the remaining paths (size <= k-2)
// transfers to a pure vertex separator for a neighbouring pair: pick any
// w outside X + {u, v}; if w is reachable from u without the arc, nothing
// leads from w to v once u is also deleted; otherwise u cannot reach w once
// v is also deleted.
Refutation refutation_from_cut(const Digraph& g, int u, int v, std::vector<int> cut, bool direct_arc) {
  if (!direct_arc) return {u, v, std::move(cut)};
  std::vector<bool> blocked(static_cast<std::size_t>(g.size()), false);
  for (int x : cut) blocked[static_cast<std::size_t>(x)] = true;
  std::vector<bool> reach(static_cast<std::size_t>(g.size()), false);
  std::queue<int> q;
  q.push(u);
  reach[static_cast<std::size_t>(u)] = true;
  while (!q.empty()) {
    const int a = q.front();
    q.pop();
    for (int b : g.out[static_cast<std::size_t>(a)]) {
      if (a == u && b == v) continue;
      if (blocked[static_cast<std::size_t>(b)] || reach[static_cast<std::size_t>(b)]) continue;
      reach[static_cast<std::size_t>(b)] = true;
      q.push(b);
    }
  }
  for (int w = 0; w < g.size(); ++w) {
    if (w == u || w == v || blocked[static_cast<std::size_t>(w)]) continue;
    auto sep = cut;
    if (reach[static_cast<std::size_t>(w)]) {
      sep.push_back(u);
      std::sort(sep.begin(), sep.end());
      return {w, v, std::move(sep)};
    }
    sep.push_back(v);
    std::sort(sep.begin(), sep.end());
    return {u, w, std::move(sep)};
  }
  throw std::logic_error("no vertex outside the cut; graph too small for k");
}

}  // namespace

bool Digraph::has_arc(int a, int b) const {
  const auto& list = out.at(static_cast<std::size_t>(a));
  return std::binary_search(list.begin(), list.end(), b);
}

std::vector<int> Digraph::in_degrees() const {
  std::vector<int> deg(out.size(), 0);
  for (const auto& list : out)
    for (int b : list) ++deg[static_cast<std::size_t>(b)];
  return deg;
}

LocalConnectivity local_connectivity(const Digraph& g, int u, int v, int limit) {
  if (u == v || u < 0 || v < 0 || u >= g.size() || v >= g.size()) throw std::invalid_argument("local_connectivity: bad pair");
  SplitNetwork net(g, u, v);
  LocalConnectivity out;
  out.paths_found = net.max_flow(limit);
  if (out.paths_found < limit) {
    const auto side = net.source_side();
    auto reached = [&](int node) { return side[static_cast<std::size_t>(node)]; };
    std::set<int> sep;
    for (int x = 0; x < g.size(); ++x) {
      if (x != u && x != v && reached(SplitNetwork::in(x)) && !reached(SplitNetwork::out(x))) sep.insert(x);
    }
    // Saturated arcs in the cut are replaced by an endpoint that is not u or v.
    for (int x = 0; x < g.size(); ++x) {
      if (x == v || !reached(SplitNetwork::out(x))) continue;
      for (int y : g.out[static_cast<std::size_t>(x)]) {
        if (y == u || reached(SplitNetwork::in(y))) continue;
        if (x == u && y == v) {
          out.direct_arc_in_cut = true;
        } else {
          sep.insert(y != v ? y : x);
        }
      }
    }
    out.separator.assign(sep.begin(), sep.end());
  }
  out.paths = net.paths(out.paths_found);
  return out;
}

ConnectivityCertificate is_strongly_k_connected(const Digraph& g, int k, const PairPolicy& policy) {
  const int n = g.size();
  if (k < 1) throw std::invalid_argument("k must be at least 1");
  const bool all = policy.kind == PairPolicy::Kind::all_pairs;
  if (all && k > n - 2) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds |V| - 2 = " + std::to_string(n - 2) +
                                "; strong k-connectivity is degenerate here");
  }
  std::vector<std::pair<int, int>> pairs;
  if (all) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) pairs.emplace_back(u, v);
  } else {
    Xorshift64Star rng(policy.seed);
    for (std::uint64_t i = 0; i < policy.count; ++i) {
      const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
      if (v >= u) ++v;
      pairs.emplace_back(u, v);
    }
  }
  ConnectivityCertificate cert;
  cert.k = k;
  cert.all_pairs = all;
  for (auto [u, v] : pairs) {
    auto lc = local_connectivity(g, u, v, k);
    if (lc.paths_found < k) {
      cert.certified = false;
      cert.pairs.clear();
      cert.refutation = refutation_from_cut(g, u, v, lc.separator, lc.direct_arc_in_cut);
      return cert;
    }
    cert.pairs.push_back({u, v, std::move(lc.paths)});
  }
  cert.certified = true;
  return cert;
}

bool reachable_without(const Digraph& g, int u, int v, const std::vector<int>& removed) {
  std::vector<bool> blocked(static_cast<std::size_t>(g.size()), false);
  for (int x : removed) blocked[static_cast<std::size_t>(x)] = true;
  if (blocked[static_cast<std::size_t>(u)] || blocked[static_cast<std::size_t>(v)]) return false;
  std::vector<bool> seen(static_cast<std::size_t>(g.size()), false);
  std::vector<int> stack{u};
  seen[static_cast<std::size_t>(u)] = true;
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    if (a == v) return true;
    for (int b : g.out[static_cast<std::size_t>(a)]) {
      if (blocked[static_cast<std::size_t>(b)] || seen[static_cast<std::size_t>(b)]) continue;
      seen[static_cast<std::size_t>(b)] = true;
      stack.push_back(b);
    }
  }
  return false;
}

std::string validate_certificate(const Digraph& g, const ConnectivityCertificate& cert) {
  const int n = g.size();
  if (cert.certified) {
    if (cert.refutation) return "certified certificate carries a refutation";
    std::set<std::pair<int, int>> covered;
    for (const auto& pp : cert.pairs) {
      if (static_cast<int>(pp.paths.size()) < cert.k) {
        return "pair (" + std::to_string(pp.u) + "," + std::to_string(pp.v) + ") has fewer than k paths";
      }
      if (!covered.insert({pp.u, pp.v}).second) return "pair listed twice";
      std::vector<int> used(static_cast<std::size_t>(n), 0);
      int direct = 0;
      for (const auto& path : pp.paths) {
        if (path.size() < 2 || path.front() != pp.u || path.back() != pp.v) return "path has wrong endpoints";
        if (path.size() == 2) ++direct;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
          const int a = path[i], b = path[i + 1];
          if (a < 0 || a >= n || b < 0 || b >= n) return "path vertex out of range";
          const auto& succ = g.out[static_cast<std::size_t>(a)];
          if (std::find(succ.begin(), succ.end(), b) == succ.end()) {
            return "missing arc " + std::to_string(a) + "->" + std::to_string(b);
          }
        }
        for (std::size_t i = 1; i + 1 < path.size(); ++i) {
          const int x = path[i];
          if (x == pp.u || x == pp.v) return "path revisits an endpoint";
          if (used[static_cast<std::size_t>(x)]++ != 0) return "paths share internal vertex " + std::to_string(x);
        }
      }
      if (direct > 1) return "direct arc used twice";
    }
    if (cert.all_pairs && static_cast<int>(covered.size()) != n * (n - 1)) return "not every ordered pair is covered";
    return {};
  }
  if (!cert.refutation) return "refuted certificate without a separator";
  const auto& r = *cert.refutation;
  if (r.u == r.v || r.u < 0 || r.v < 0 || r.u >= n || r.v >= n) return "refutation pair invalid";
  if (static_cast<int>(r.separator.size()) >= cert.k) return "separator is not smaller than k";
  for (int x : r.separator)
    if (x == r.u || x == r.v || x < 0 || x >= n) return "separator contains an endpoint or invalid vertex";
  if (reachable_without(g, r.u, r.v, r.separator)) return "separator does not disconnect the pair";
  return {};
}

}  // namespace knlab
