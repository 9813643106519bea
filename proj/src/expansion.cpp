#include <algorithm>
#include <stdexcept>

#include "knlab/combinatorics.hpp"
#include "knlab/orientlab.hpp"
#include "knlab/rng.hpp"

namespace knlab {

std::int64_t expansion_threshold(int k, int set_size) {
  const std::int64_t kk = k;
  return std::min(kk * kk - 1, (kk - 1) * (static_cast<std::int64_t>(set_size) + 1));
}

int outer_neighbourhood_size(const UndirectedGraph& g, const std::vector<int>& members) {
  std::vector<char> mark(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v : members) mark.at(static_cast<std::size_t>(v)) = 1;
  int count = 0;
  for (int v : members) {
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (mark[static_cast<std::size_t>(w)] == 0) {
        mark[static_cast<std::size_t>(w)] = 2;
        ++count;
      }
    }
  }
  return count;
}

namespace {

ExpansionRecord evaluate(const UndirectedGraph& g, int k, std::vector<int> members) {
  ExpansionRecord r;
  r.set_size = static_cast<int>(members.size());
  r.neighbourhood = outer_neighbourhood_size(g, members);
  r.threshold = expansion_threshold(k, r.set_size);
  r.satisfied = r.neighbourhood > r.threshold;
  r.members = std::move(members);
  return r;
}

// Floyd's algorithm: a uniform `size`-subset of {0..n-1}, sorted.
std::vector<int> sample_subset(int n, int size, Xorshift64Star& rng) {
  std::vector<int> chosen;
  for (int j = n - size; j < n; ++j) {
    const int t = static_cast<int>(rng.below(static_cast<std::uint64_t>(j) + 1));
    if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
      chosen.push_back(t);
    else
      chosen.push_back(j);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

ExpansionReport expansion_condition(const UndirectedGraph& g, std::string graph_id, int k, int size_cap,
                                    std::uint64_t samples, std::uint64_t seed) {
  const int nv = g.vertex_count();
  if (k < 1) throw std::invalid_argument("expansion: k must be at least 1");
  if (size_cap < 1 || size_cap > nv / 2)
    throw std::invalid_argument("expansion: size cap must lie in 1.." + std::to_string(nv / 2) + ", got " +
                                std::to_string(size_cap));
  ExpansionReport rep;
  rep.graph_id = std::move(graph_id);
  rep.k = k;
  rep.size_cap = size_cap;
  rep.max_size = nv / 2;
  rep.samples = samples;
  rep.seed = seed;

  for (int size = 1; size <= size_cap; ++size) {
    std::vector<int> comb(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) comb[static_cast<std::size_t>(i)] = i;
    do {
      rep.records.push_back(evaluate(g, k, comb));
    } while (next_combination(comb, nv));
  }
  for (int size = size_cap + 1; size <= rep.max_size; ++size) {
    Xorshift64Star rng(stream_seed(seed, static_cast<std::uint64_t>(size)));
    for (std::uint64_t i = 0; i < samples; ++i) rep.records.push_back(evaluate(g, k, sample_subset(nv, size, rng)));
  }
  for (const auto& r : rep.records) rep.all_satisfied = rep.all_satisfied && r.satisfied;

  rep.coverage = "exhaustive for sizes 1.." + std::to_string(size_cap);
  if (size_cap < rep.max_size) {
    rep.coverage += samples == 0 ? "; sizes " + std::to_string(size_cap + 1) + ".." + std::to_string(rep.max_size) +
                                       " not checked"
                                 : "; " + std::to_string(samples) + " uniform samples per size " +
                                       std::to_string(size_cap + 1) + ".." + std::to_string(rep.max_size);
  }
  return rep;
}

}  // namespace knlab
