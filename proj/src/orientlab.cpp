#include "knlab/orientlab.hpp"

#include <algorithm>
#include <istream>

#include "knlab/rng.hpp"

namespace knlab {

bool UndirectedGraph::adjacent(int a, int b) const {
  const auto& list = adj.at(static_cast<std::size_t>(a));
  return std::binary_search(list.begin(), list.end(), b);
}

UndirectedGraph UndirectedGraph::from_edges(int vertex_count, std::vector<std::pair<int, int>> edges) {
  UndirectedGraph g;
  g.adj.resize(static_cast<std::size_t>(vertex_count));
  for (auto& [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= vertex_count || b >= vertex_count) throw std::invalid_argument("bad edge");
    if (a > b) std::swap(a, b);
    g.adj[static_cast<std::size_t>(a)].push_back(b);
    g.adj[static_cast<std::size_t>(b)].push_back(a);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw std::invalid_argument("duplicate edge");
  for (auto& list : g.adj) std::sort(list.begin(), list.end());
  g.edges = std::move(edges);
  return g;
}

LineGraph build_line_graph(int n) {
  if (n < 3) throw std::domain_error("line graph needs n >= 3");
  const CompleteGraph kn(n);
  std::vector<std::pair<int, int>> edges;
  for (EdgeId a = 0; a < kn.edge_count(); ++a) {
    auto [a0, a1] = kn.endpoints(a);
    for (EdgeId b = a + 1; b < kn.edge_count(); ++b) {
      auto [b0, b1] = kn.endpoints(b);
      if (a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1) edges.emplace_back(a, b);
    }
  }
  return {n, UndirectedGraph::from_edges(kn.edge_count(), std::move(edges))};
}

Orientation::Orientation(std::shared_ptr<const LineGraph> lg, std::vector<std::uint8_t> reversed)
    : lg_(std::move(lg)), bits_(std::move(reversed)) {
  if (!lg_) throw std::invalid_argument("orientation needs a line graph");
  if (static_cast<int>(bits_.size()) != lg_->graph.edge_count()) {
    throw std::invalid_argument("orientation needs " + std::to_string(lg_->graph.edge_count()) + " bits, got " +
                                std::to_string(bits_.size()));
  }
  for (auto b : bits_)
    if (b > 1) throw std::invalid_argument("orientation bits must be 0 or 1");
}

std::pair<int, int> Orientation::arc(int edge_index) const {
  auto [a, b] = lg_->graph.edges.at(static_cast<std::size_t>(edge_index));
  return bits_[static_cast<std::size_t>(edge_index)] ? std::pair{b, a} : std::pair{a, b};
}

Digraph Orientation::digraph() const {
  Digraph d;
  d.out.resize(static_cast<std::size_t>(lg_->graph.vertex_count()));
  for (int e = 0; e < static_cast<int>(bits_.size()); ++e) {
    auto [from, to] = arc(e);
    d.out[static_cast<std::size_t>(from)].push_back(to);
  }
  for (auto& list : d.out) std::sort(list.begin(), list.end());
  return d;
}

bool Orientation::is_eulerian() const {
  std::vector<int> balance(static_cast<std::size_t>(lg_->graph.vertex_count()), 0);
  for (int e = 0; e < static_cast<int>(bits_.size()); ++e) {
    auto [from, to] = arc(e);
    ++balance[static_cast<std::size_t>(from)];
    --balance[static_cast<std::size_t>(to)];
  }
  return std::all_of(balance.begin(), balance.end(), [](int x) { return x == 0; });
}

std::string Orientation::bit_string() const {
  std::string s;
  s.reserve(bits_.size());
  for (auto b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

Orientation eulerian_orientation(std::shared_ptr<const LineGraph> lg, std::uint64_t seed) {
  const auto& g = lg->graph;
  const int nv = g.vertex_count();
  for (const auto& list : g.adj)
    if (list.size() % 2 != 0) throw std::invalid_argument("graph has a vertex of odd degree");

  // Incidence lists of (neighbour, edge index), shuffled per vertex.
  std::vector<std::vector<std::pair<int, int>>> inc(static_cast<std::size_t>(nv));
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    inc[static_cast<std::size_t>(a)].emplace_back(b, e);
    inc[static_cast<std::size_t>(b)].emplace_back(a, e);
  }
  Xorshift64Star rng(seed);
  for (auto& list : inc) {
    for (std::size_t i = list.size(); i > 1; --i) std::swap(list[i - 1], list[rng.below(i)]);
  }

  std::vector<std::uint8_t> bits(static_cast<std::size_t>(g.edge_count()), 0);
  std::vector<bool> used(bits.size(), false);
  std::vector<std::size_t> cursor(static_cast<std::size_t>(nv), 0);
  // Every component gets its own circuit; J(n,2) has one.
  for (int start = 0; start < nv; ++start) {
    std::vector<int> stack{start};
    while (!stack.empty()) {
      const int x = stack.back();
      auto& cur = cursor[static_cast<std::size_t>(x)];
      const auto& list = inc[static_cast<std::size_t>(x)];
      while (cur < list.size() && used[static_cast<std::size_t>(list[cur].second)]) ++cur;
      if (cur == list.size()) {
        stack.pop_back();
        continue;
      }
      auto [y, e] = list[cur];
      used[static_cast<std::size_t>(e)] = true;
      // Traversed x -> y.
      bits[static_cast<std::size_t>(e)] = g.edges[static_cast<std::size_t>(e)].first == x ? 0 : 1;
      stack.push_back(y);
    }
  }
  return Orientation(std::move(lg), std::move(bits));
}

EnumerationResult enumerate_eulerian_orientations(const std::shared_ptr<const LineGraph>& lg, std::uint64_t cap,
                                                  const std::function<void(const Orientation&)>& emit) {
  const auto& g = lg->graph;
  const int m = g.edge_count();
  std::vector<int> out_left(static_cast<std::size_t>(g.vertex_count())), in_left(out_left.size());
  for (int v = 0; v < g.vertex_count(); ++v) {
    const int d = static_cast<int>(g.adj[static_cast<std::size_t>(v)].size());
    if (d % 2 != 0) return {};
    out_left[static_cast<std::size_t>(v)] = in_left[static_cast<std::size_t>(v)] = d / 2;
  }
  EnumerationResult res;
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(m), 0);
  auto rec = [&](auto&& self, int e) -> bool {
    if (e == m) {
      if (res.emitted == cap) {
        res.truncated = true;
        return false;
      }
      ++res.emitted;
      emit(Orientation(lg, bits));
      return true;
    }
    auto [a, b] = g.edges[static_cast<std::size_t>(e)];
    for (std::uint8_t bit = 0; bit < 2; ++bit) {
      const int from = bit ? b : a, to = bit ? a : b;
      auto& fo = out_left[static_cast<std::size_t>(from)];
      auto& ti = in_left[static_cast<std::size_t>(to)];
      if (fo == 0 || ti == 0) continue;
      --fo;
      --ti;
      bits[static_cast<std::size_t>(e)] = bit;
      const bool go_on = self(self, e + 1);
      ++fo;
      ++ti;
      if (!go_on) return false;
    }
    return true;
  };
  rec(rec, 0);
  return res;
}

std::vector<Orientation> all_eulerian_orientations(const std::shared_ptr<const LineGraph>& lg, std::uint64_t cap,
                                                   bool* truncated) {
  std::vector<Orientation> out;
  auto res = enumerate_eulerian_orientations(lg, cap, [&](const Orientation& o) { out.push_back(o); });
  if (truncated) *truncated = res.truncated;
  return out;
}

std::string format_orientation(const Orientation& o) {
  return "n=" + std::to_string(o.line_graph().base_n) + "\n" + o.bit_string() + "\n";
}

Orientation parse_orientation(std::istream& in) {
  std::string header, body;
  if (!std::getline(in, header)) throw ParseError(1, 1, "missing header");
  while (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.rfind("n=", 0) != 0) throw ParseError(1, 1, "expected 'n='");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(header.substr(2), &used);
    if (used + 2 != header.size()) throw ParseError(1, static_cast<int>(used) + 3, "trailing characters after n");
  } catch (const std::logic_error&) {
    throw ParseError(1, 3, "expected vertex count");
  }
  if (n < 3 || n > 200) throw ParseError(1, 3, "vertex count out of range");
  if (!std::getline(in, body)) throw ParseError(2, 1, "missing direction bits");
  while (!body.empty() && body.back() == '\r') body.pop_back();
  auto lg = std::make_shared<const LineGraph>(build_line_graph(n));
  const auto m = static_cast<std::size_t>(lg->graph.edge_count());
  std::vector<std::uint8_t> bits;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '0' && body[i] != '1') throw ParseError(2, static_cast<int>(i) + 1, "direction bits must be 0 or 1");
    if (i >= m) throw ParseError(2, static_cast<int>(i) + 1, "too many direction bits: expected " + std::to_string(m));
    bits.push_back(body[i] == '1');
  }
  if (bits.size() != m) {
    throw ParseError(2, static_cast<int>(body.size()) + 1,
                     "truncated: expected " + std::to_string(m) + " bits, got " + std::to_string(bits.size()));
  }
  return Orientation(std::move(lg), std::move(bits));
}

// ------------------------------------------------------------------ bridge

BridgeReport theorem2_bridge_report(const EdgePartition& p) {
  const int n = p.n();
  const LineGraph lg = build_line_graph(n);
  BridgeReport r;
  r.n = n;
  r.k = n - 2;
  std::vector<int> s_hat;
  for (EdgeId e = 0; e < p.graph().edge_count(); ++e) {
    switch (p.label(e)) {
      case Label::S: s_hat.push_back(e); ++r.size_s; break;
      case Label::T: ++r.size_t_; break;
      case Label::Z: ++r.size_z; break;
    }
  }
  std::vector<bool> in_s(static_cast<std::size_t>(lg.graph.vertex_count()), false), in_n(in_s.size(), false);
  for (int v : s_hat) in_s[static_cast<std::size_t>(v)] = true;
  for (int v : s_hat)
    for (int w : lg.graph.adj[static_cast<std::size_t>(v)])
      if (!in_s[static_cast<std::size_t>(w)]) in_n[static_cast<std::size_t>(w)] = true;
  for (int w = 0; w < lg.graph.vertex_count(); ++w) {
    if (!in_n[static_cast<std::size_t>(w)]) continue;
    ++r.neighbourhood_s;
    if (p.label(w) == Label::T) ++r.neighbourhood_s_in_t;
    if (p.label(w) == Label::Z) ++r.neighbourhood_s_in_z;
  }
  r.sums = incidence_sums(degree_profile(p));
  const std::int64_t k = r.k;
  r.min_kz_sz = std::min(k * r.size_z, static_cast<std::int64_t>(r.size_s) * r.size_z);
  r.expansion_threshold = knlab::expansion_threshold(r.k, r.size_s);
  r.neighbourhood_ge_min_kz = r.neighbourhood_s >= r.min_kz_sz;
  r.min_kz_gt_threshold = r.min_kz_sz > r.expansion_threshold;
  return r;
}

}  // namespace knlab
