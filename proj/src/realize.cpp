#include <algorithm>
#include <array>
#include <numeric>
#include <unordered_set>

#include "knlab/kncore.hpp"
#include "knlab/matching.hpp"

namespace knlab {

namespace {

constexpr std::array<Label, 3> kClasses = {Label::S, Label::T, Label::Z};

const std::vector<int>& degrees_of(const DegreeProfile& p, Label c) {
  return c == Label::S ? p.s : c == Label::T ? p.t : p.z;
}

// Havel-Hakimi on K_n: returns the edge ids of a simple graph with the given
// degrees, or nullopt if the sequence is not graphical.
std::optional<std::vector<EdgeId>> havel_hakimi(const CompleteGraph& g, const std::vector<int>& degrees) {
  std::vector<std::pair<int, Vertex>> rest;
  for (Vertex v = 0; v < g.n(); ++v) rest.emplace_back(degrees[static_cast<std::size_t>(v)], v);
  std::vector<EdgeId> edges;
  for (;;) {
    std::sort(rest.begin(), rest.end(), std::greater<>());
    while (!rest.empty() && rest.back().first == 0) rest.pop_back();
    if (rest.empty()) return edges;
    auto [d, v] = rest.front();
    if (d > static_cast<int>(rest.size()) - 1) return std::nullopt;
    rest.erase(rest.begin());
    for (int i = 0; i < d; ++i) {
      --rest[static_cast<std::size_t>(i)].first;
      edges.push_back(g.edge_id(v, rest[static_cast<std::size_t>(i)].second));
    }
  }
}

// Realize class `first` with Havel-Hakimi, then class `second` as an f-factor
// of what is left; the remaining edges take the third class.
std::optional<EdgePartition> two_stage(const DegreeProfile& p, Label first, Label second, Label third) {
  const CompleteGraph g(p.n);
  auto first_edges = havel_hakimi(g, degrees_of(p, first));
  if (!first_edges) return std::nullopt;
  std::vector<Label> labels(static_cast<std::size_t>(g.edge_count()), third);
  std::vector<bool> used(labels.size(), false);
  for (EdgeId e : *first_edges) {
    labels[static_cast<std::size_t>(e)] = first;
    used[static_cast<std::size_t>(e)] = true;
  }
  std::vector<std::pair<int, int>> host;
  std::vector<EdgeId> host_ids;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    if (used[static_cast<std::size_t>(e)]) continue;
    host.push_back(g.endpoints(e));
    host_ids.push_back(e);
  }
  auto chosen = find_f_factor(p.n, host, degrees_of(p, second));
  if (!chosen) return std::nullopt;
  for (int j : *chosen) labels[static_cast<std::size_t>(host_ids[static_cast<std::size_t>(j)])] = second;
  return EdgePartition::from_labels(p.n, std::move(labels));
}

// Complete search by vertex elimination. Removing a vertex from K_r leaves
// K_{r-1}, so every residual subproblem is again "realize these class degrees
// on a complete graph" and depends only on the multiset of residual demands.
// Failed multisets are memoized; vertices with equal residual demand are
// interchangeable, so the branching only chooses how many of each demand
// type receive an S or a Z edge.
class EliminationSearch {
 public:
  explicit EliminationSearch(const DegreeProfile& p) : g_(p.n), labels_(static_cast<std::size_t>(g_.edge_count()), Label::T) {
    for (Vertex v = 0; v < p.n; ++v) {
      const auto i = static_cast<std::size_t>(v);
      rows_.push_back({v, p.s[i], p.z[i]});
    }
  }

  std::optional<EdgePartition> run() {
    if (!solve(rows_)) return std::nullopt;
    return EdgePartition::from_labels(g_.n(), labels_);
  }

 private:
  struct Row {
    Vertex id;
    int s;
    int z;
  };

  struct Group {
    int s;
    int z;
    std::vector<Row> members;
  };

  static std::string key_of(const std::vector<Row>& rows) {
    std::vector<std::pair<int, int>> k;
    k.reserve(rows.size());
    for (const auto& r : rows) k.emplace_back(r.s, r.z);
    std::sort(k.begin(), k.end());
    std::string out;
    out.reserve(2 * k.size());
    for (auto [a, b] : k) {
      out.push_back(static_cast<char>(a));
      out.push_back(static_cast<char>(b));
    }
    return out;
  }

  static bool residual_plausible(const std::vector<Row>& rows) {
    const int r = static_cast<int>(rows.size());
    std::vector<int> ds, dz, dt;
    for (const auto& row : rows) {
      const int t = r - 1 - row.s - row.z;
      if (row.s < 0 || row.z < 0 || t < 0) return false;
      ds.push_back(row.s);
      dz.push_back(row.z);
      dt.push_back(t);
    }
    return is_graphical(ds) && is_graphical(dz) && is_graphical(dt);
  }

  bool solve(const std::vector<Row>& rows) {
    if (rows.size() <= 1) return rows.empty() || (rows[0].s == 0 && rows[0].z == 0);
    const std::string key = key_of(rows);
    if (failed_.count(key) != 0) return false;
    if (!residual_plausible(rows)) {
      failed_.insert(key);
      return false;
    }

    // Eliminate the vertex with the largest single-class demand; it has the
    // fewest ways to distribute its edges.
    const int r = static_cast<int>(rows.size());
    std::size_t pick = 0;
    int best = -1;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const int t = r - 1 - rows[i].s - rows[i].z;
      const int m = std::max({rows[i].s, rows[i].z, t});
      if (m > best) {
        best = m;
        pick = i;
      }
    }
    const Row v = rows[pick];

    std::vector<Group> groups;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == pick) continue;
      auto it = std::find_if(groups.begin(), groups.end(),
                             [&](const Group& gr) { return gr.s == rows[i].s && gr.z == rows[i].z; });
      if (it == groups.end()) {
        groups.push_back({rows[i].s, rows[i].z, {}});
        it = groups.end() - 1;
      }
      it->members.push_back(rows[i]);
    }
    // Havel-Hakimi flavour: high residual demand first.
    std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) {
      return std::tie(a.s, a.z) > std::tie(b.s, b.z);
    });

    std::vector<int> to_s(groups.size(), 0), to_z(groups.size(), 0);
    const bool ok = distribute(v, groups, 0, v.s, v.z, to_s, to_z, r);
    if (!ok) failed_.insert(key);
    return ok;
  }

  bool distribute(const Row& v, const std::vector<Group>& groups, std::size_t gi, int need_s, int need_z,
                  std::vector<int>& to_s, std::vector<int>& to_z, int r) {
    if (gi == groups.size()) {
      if (need_s != 0 || need_z != 0) return false;
      return descend(v, groups, to_s, to_z);
    }
    // Capacity left in later groups.
    int cap_s = 0, cap_z = 0, cap_t = 0;
    for (std::size_t j = gi; j < groups.size(); ++j) {
      const int c = static_cast<int>(groups[j].members.size());
      const int t = r - 1 - groups[j].s - groups[j].z;
      if (groups[j].s > 0) cap_s += c;
      if (groups[j].z > 0) cap_z += c;
      if (t > 0) cap_t += c;
    }
    const int need_t = (r - 1 - v.s - v.z) - assigned_t(groups, gi, to_s, to_z);
    if (cap_s < need_s || cap_z < need_z || cap_t < need_t) return false;

    const Group& gr = groups[gi];
    const int c = static_cast<int>(gr.members.size());
    const int gt = r - 1 - gr.s - gr.z;
    const int max_a = gr.s > 0 ? std::min(c, need_s) : 0;
    for (int a = max_a; a >= 0; --a) {
      const int max_b = gr.z > 0 ? std::min(c - a, need_z) : 0;
      for (int b = max_b; b >= 0; --b) {
        if (c - a - b > 0 && gt <= 0) continue;
        to_s[gi] = a;
        to_z[gi] = b;
        if (distribute(v, groups, gi + 1, need_s - a, need_z - b, to_s, to_z, r)) return true;
      }
    }
    to_s[gi] = to_z[gi] = 0;
    return false;
  }

  static int assigned_t(const std::vector<Group>& groups, std::size_t upto, const std::vector<int>& to_s,
                        const std::vector<int>& to_z) {
    int t = 0;
    for (std::size_t j = 0; j < upto; ++j) t += static_cast<int>(groups[j].members.size()) - to_s[j] - to_z[j];
    return t;
  }

  bool descend(const Row& v, const std::vector<Group>& groups, const std::vector<int>& to_s,
               const std::vector<int>& to_z) {
    std::vector<Row> next;
    for (std::size_t j = 0; j < groups.size(); ++j) {
      const auto& members = groups[j].members;
      for (int i = 0; i < static_cast<int>(members.size()); ++i) {
        Row w = members[static_cast<std::size_t>(i)];
        Label c = Label::T;
        if (i < to_s[j]) {
          c = Label::S;
          --w.s;
        } else if (i < to_s[j] + to_z[j]) {
          c = Label::Z;
          --w.z;
        }
        labels_[static_cast<std::size_t>(g_.edge_id(v.id, w.id))] = c;
        next.push_back(w);
      }
    }
    return solve(next);
  }

  CompleteGraph g_;
  std::vector<Label> labels_;
  std::vector<Row> rows_;
  std::unordered_set<std::string> failed_;
};

}  // namespace

bool is_graphical(std::vector<int> d, std::string* why) {
  std::sort(d.begin(), d.end(), std::greater<>());
  const auto n = static_cast<long long>(d.size());
  long long total = 0;
  for (int x : d) {
    if (x < 0 || x > n - 1) {
      if (why) *why = "degree " + std::to_string(x) + " outside [0, " + std::to_string(n - 1) + "]";
      return false;
    }
    total += x;
  }
  if (total % 2 != 0) {
    if (why) *why = "degree sum " + std::to_string(total) + " is odd";
    return false;
  }
  // Erdos-Gallai: for each k, sum of the k largest <= k(k-1) + sum min(d_i, k).
  long long prefix = 0;
  for (long long k = 1; k <= n; ++k) {
    prefix += d[static_cast<std::size_t>(k - 1)];
    long long tail = 0;
    for (long long i = k; i < n; ++i) tail += std::min<long long>(d[static_cast<std::size_t>(i)], k);
    if (prefix > k * (k - 1) + tail) {
      if (why) {
        *why = "Erdos-Gallai fails at k=" + std::to_string(k) + ": " + std::to_string(prefix) + " > " +
               std::to_string(k * (k - 1) + tail);
      }
      return false;
    }
  }
  return true;
}

ProfileRealization realize_profile(const DegreeProfile& profile) {
  if (auto bad = profile.local_violation()) throw std::invalid_argument("realize_profile: " + *bad);
  ProfileRealization out;
  for (Label c : kClasses) {
    const auto& d = degrees_of(profile, c);
    const auto sum = std::accumulate(d.begin(), d.end(), std::int64_t{0});
    if (sum % 2 != 0) {
      out.reason = RealizationReason::parity;
      if (!out.note.empty()) out.note += "; ";
      out.note += std::string("sum of ") + static_cast<char>(std::tolower(static_cast<char>(c))) + " = " +
                  std::to_string(sum) + " is odd";
    }
  }
  if (out.reason == RealizationReason::parity) return out;
  for (Label c : kClasses) {
    std::string why;
    if (!is_graphical(degrees_of(profile, c), &why)) {
      out.reason = RealizationReason::bound;
      out.note = std::string("class ") + static_cast<char>(c) + ": " + why;
      return out;
    }
  }
  constexpr std::array<std::array<Label, 3>, 3> orders = {{{Label::Z, Label::S, Label::T},
                                                           {Label::S, Label::Z, Label::T},
                                                           {Label::T, Label::S, Label::Z}}};
  for (const auto& o : orders) {
    if (auto p = two_stage(profile, o[0], o[1], o[2])) {
      out.witness = std::move(p);
      out.via_two_stage = true;
      return out;
    }
  }
  if (auto p = EliminationSearch(profile).run()) {
    out.witness = std::move(p);
    return out;
  }
  out.reason = RealizationReason::exhausted_search;
  out.note = "no partition of K_" + std::to_string(profile.n) + " has this profile";
  return out;
}

}  // namespace knlab
