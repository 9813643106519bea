#include "knlab/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "knlab/canonical.hpp"
#include "knlab/checkpoint.hpp"
#include "knlab/combinatorics.hpp"
#include "knlab/incidence.hpp"
#include "knlab/rng.hpp"

namespace knlab {

namespace {

constexpr int kProfileMaxN = 15;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("search counter overflow");
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("search counter overflow");
  return r;
}

struct UnitResult {
  SearchCounters counters;
  std::vector<EdgePartition> violations;
  std::vector<DegreeProfile> relaxation_samples;
  std::vector<DegreeProfile> realizable;
};

void merge_into(SearchReport& report, UnitResult&& r) {
  report.counters += r.counters;
  for (auto& v : r.violations)
    if (report.violations.size() < kMaxStoredViolations) report.violations.push_back(std::move(v));
  for (auto& v : r.relaxation_samples)
    if (report.relaxation_samples.size() < kMaxRelaxationSamples) report.relaxation_samples.push_back(std::move(v));
  for (auto& v : r.realizable) report.realizable_set.push_back(std::move(v));
}

std::string make_checkpoint_id(const SearchReport& r) {
  return std::string(to_string(r.config.mode)) + "-n" + std::to_string(r.config.n) + "-u" +
         std::to_string(r.units_done) + "of" + std::to_string(r.units_total);
}

// Runs units [report.units_done, limit) on `workers` threads and merges them
// in unit order. `work` must be thread-safe and depend only on the index.
template <typename Work>
void run_units(SearchReport& report, Work&& work) {
  const auto& cfg = report.config;
  const std::uint64_t start = report.units_done;
  std::uint64_t limit = report.units_total;
  if (cfg.unit_budget) limit = std::min(limit, start + *cfg.unit_budget);

  using Clock = std::chrono::steady_clock;
  auto last_save = Clock::now();
  std::uint64_t items_at_save = report.counters.partitions_checked + report.counters.profiles_checked;
  auto maybe_checkpoint = [&](bool force) {
    if (cfg.checkpoint_path.empty()) return;
    const std::uint64_t items = report.counters.partitions_checked + report.counters.profiles_checked;
    const double secs = std::chrono::duration<double>(Clock::now() - last_save).count();
    if (!force && items - items_at_save < kCheckpointEveryItems && secs < kCheckpointEverySeconds) return;
    report.checkpoint_id = make_checkpoint_id(report);
    save_checkpoint(cfg.checkpoint_path, report);
    last_save = Clock::now();
    items_at_save = items;
  };

  const unsigned workers = static_cast<unsigned>(std::max<std::uint64_t>(
      1, std::min<std::uint64_t>(std::max(1u, cfg.workers), limit > start ? limit - start : 1)));

  if (workers == 1) {
    for (std::uint64_t u = start; u < limit; ++u) {
      merge_into(report, work(u));
      report.units_done = u + 1;
      maybe_checkpoint(false);
    }
  } else {
    std::atomic<std::uint64_t> next{start};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, UnitResult> done;
    std::exception_ptr failure;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          if (stop.load()) return;
          const std::uint64_t u = next.fetch_add(1);
          if (u >= limit) return;
          try {
            UnitResult r = work(u);
            std::lock_guard lock(mu);
            done.emplace(u, std::move(r));
          } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            stop = true;
          }
          cv.notify_one();
        }
      });
    }
    {
      std::unique_lock lock(mu);
      while (report.units_done < limit && !failure) {
        cv.wait(lock, [&] { return failure || done.count(report.units_done) != 0; });
        while (!failure && done.count(report.units_done) != 0) {
          auto node = done.extract(report.units_done);
          merge_into(report, std::move(node.mapped()));
          ++report.units_done;
          lock.unlock();
          maybe_checkpoint(false);
          lock.lock();
        }
      }
    }
    stop = true;
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
  }
  report.complete = report.units_done == report.units_total;
  maybe_checkpoint(true);
}

// ---------------------------------------------------------------- exhaustive

// Free (non-Z) edges of K_n given a Z edge set, plus per-vertex z degrees.
struct ZLayout {
  int n = 0;
  std::vector<int> z;
  std::vector<std::pair<Vertex, Vertex>> free_ends;
  std::vector<EdgeId> free_ids;
  std::vector<EdgeId> z_ids;

  ZLayout(const CompleteGraph& g, const std::vector<EdgeId>& z_edges) : n(g.n()), z(static_cast<std::size_t>(g.n()), 0) {
    std::vector<bool> in_z(static_cast<std::size_t>(g.edge_count()), false);
    for (EdgeId e : z_edges) {
      in_z[static_cast<std::size_t>(e)] = true;
      auto [u, v] = g.endpoints(e);
      ++z[static_cast<std::size_t>(u)];
      ++z[static_cast<std::size_t>(v)];
    }
    z_ids = z_edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (in_z[static_cast<std::size_t>(e)]) continue;
      free_ends.push_back(g.endpoints(e));
      free_ids.push_back(e);
    }
  }

  // Free edge j is S when bit j of mask is set, T otherwise.
  EdgePartition partition(std::uint64_t mask) const {
    std::vector<Label> labels(free_ids.size() + z_ids.size(), Label::T);
    for (EdgeId e : z_ids) labels[static_cast<std::size_t>(e)] = Label::Z;
    for (std::size_t j = 0; j < free_ids.size(); ++j)
      if ((mask >> j) & 1U) labels[static_cast<std::size_t>(free_ids[j])] = Label::S;
    return EdgePartition::from_labels(n, std::move(labels));
  }

  IncidenceSums sums(std::uint64_t mask) const {
    std::array<int, 64> s{};
    for (std::size_t j = 0; j < free_ends.size(); ++j) {
      if ((mask >> j) & 1U) {
        ++s[static_cast<std::size_t>(free_ends[j].first)];
        ++s[static_cast<std::size_t>(free_ends[j].second)];
      }
    }
    IncidenceSums out;
    for (int v = 0; v < n; ++v) {
      const auto i = static_cast<std::size_t>(v);
      const std::int64_t t = n - 1 - s[i] - z[i];
      out.st += s[i] * t;
      out.zt += z[i] * t;
      out.zs += static_cast<std::int64_t>(z[i]) * s[i];
    }
    return out;
  }
};

// Walks all 2^F S/T labelings of the free edges in Gray-code order, updating
// the incidence sums in O(1) per step.
void sweep_labelings(const ZLayout& lay, UnitResult& out) {
  const std::size_t free_count = lay.free_ends.size();
  std::array<std::int64_t, 64> s{}, t{}, z{};
  std::int64_t ist = 0, izt = 0, izs = 0;
  for (int v = 0; v < lay.n; ++v) {
    const auto i = static_cast<std::size_t>(v);
    z[i] = lay.z[i];
    t[i] = lay.n - 1 - lay.z[i];
    izt += z[i] * t[i];
  }
  std::uint64_t gray = 0;
  const std::uint64_t total = std::uint64_t{1} << free_count;
  auto check = [&] {
    if (ist < std::min(izt, izs) && out.violations.size() < kMaxStoredViolations)
      out.violations.push_back(lay.partition(gray));
  };
  check();
  for (std::uint64_t i = 1; i < total; ++i) {
    const int j = __builtin_ctzll(i);
    gray ^= std::uint64_t{1} << j;
    const bool to_s = (gray >> j) & 1U;
    for (Vertex a : {lay.free_ends[static_cast<std::size_t>(j)].first, lay.free_ends[static_cast<std::size_t>(j)].second}) {
      const auto k = static_cast<std::size_t>(a);
      if (to_s) {
        ist += t[k] - s[k] - 1;
        izs += z[k];
        izt -= z[k];
        ++s[k];
        --t[k];
      } else {
        ist += s[k] - t[k] - 1;
        izs -= z[k];
        izt += z[k];
        --s[k];
        ++t[k];
      }
    }
    check();
  }
  const auto direct = lay.sums(gray);
  if (direct.st != ist || direct.zt != izt || direct.zs != izs) throw std::logic_error("incremental sums drifted");
  out.counters.partitions_checked += total;
}

struct ExhaustivePlan {
  CompleteGraph g;
  int k;
  std::uint64_t z_total;
  std::uint64_t z_per_unit;
};

ExhaustivePlan plan_exhaustive(int n) {
  CompleteGraph g(n);
  const int k = n - 3;
  const int free_count = g.edge_count() - k;
  if (free_count > 62) throw SearchConfigError("exhaustive search: too many free edges for n=" + std::to_string(n));
  const std::uint64_t z_total = binomial64(g.edge_count(), k);
  const std::uint64_t per = std::max<std::uint64_t>(1, (std::uint64_t{1} << 20) >> std::min(free_count, 20));
  return {g, k, z_total, per};
}

UnitResult exhaustive_unit(const ExhaustivePlan& plan, std::uint64_t unit) {
  UnitResult out;
  const std::uint64_t lo = unit * plan.z_per_unit;
  const std::uint64_t hi = std::min(plan.z_total, lo + plan.z_per_unit);
  std::vector<int> comb = unrank_combination(plan.g.edge_count(), plan.k, lo);
  for (std::uint64_t r = lo; r < hi; ++r) {
    sweep_labelings(ZLayout(plan.g, comb), out);
    if (r + 1 < hi) next_combination(comb, plan.g.edge_count());
  }
  return out;
}

// Bit permutation of a free-edge mask, table driven (one table per byte).
struct MaskMap {
  std::vector<std::array<std::uint64_t, 256>> tables;
  std::uint64_t flip = 0;  // XOR applied after permuting (S <-> T exchange)

  std::uint64_t apply(std::uint64_t mask) const {
    std::uint64_t r = 0;
    for (std::size_t b = 0; b < tables.size(); ++b) r |= tables[b][(mask >> (8 * b)) & 0xFF];
    return r ^ flip;
  }
};

UnitResult symmetric_unit(const CompleteGraph& g, const EdgeSetClass& cls) {
  UnitResult out;
  const ZLayout lay(g, cls.edges);
  const std::size_t free_count = lay.free_ids.size();
  const std::uint64_t all = free_count == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << free_count) - 1;
  std::vector<int> free_index(static_cast<std::size_t>(g.edge_count()), -1);
  for (std::size_t j = 0; j < free_count; ++j) free_index[static_cast<std::size_t>(lay.free_ids[j])] = static_cast<int>(j);

  std::vector<MaskMap> group;
  const std::size_t bytes = (free_count + 7) / 8;
  for (const auto& perm : cls.automorphisms) {
    std::vector<int> image(free_count);
    for (std::size_t j = 0; j < free_count; ++j) {
      auto [u, v] = lay.free_ends[j];
      image[j] = free_index[static_cast<std::size_t>(g.edge_id(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))];
    }
    for (int sw = 0; sw < 2; ++sw) {
      MaskMap mm;
      mm.tables.assign(bytes, {});
      for (std::size_t b = 0; b < bytes; ++b) {
        for (unsigned x = 0; x < 256; ++x) {
          std::uint64_t r = 0;
          for (unsigned bit = 0; bit < 8; ++bit) {
            const std::size_t j = 8 * b + bit;
            if (j < free_count && ((x >> bit) & 1U)) r |= std::uint64_t{1} << image[j];
          }
          mm.tables[b][x] = r;
        }
      }
      mm.flip = sw ? all : 0;
      group.push_back(std::move(mm));
    }
  }
  const std::uint64_t double_fact = 2 * factorial64(g.n());
  const std::uint64_t total = std::uint64_t{1} << free_count;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    std::uint64_t stab = 0;
    bool canonical = true;
    for (const auto& mm : group) {
      const std::uint64_t img = mm.apply(mask);
      if (img < mask) {
        canonical = false;
        break;
      }
      stab += img == mask;
    }
    if (!canonical) continue;
    ++out.counters.classes_checked;
    ++out.counters.partitions_checked;
    out.counters.raw_equivalent = checked_add(out.counters.raw_equivalent, double_fact / stab);
    if (!lay.sums(mask).bound_holds() && out.violations.size() < kMaxStoredViolations)
      out.violations.push_back(lay.partition(mask));
  }
  return out;
}

// -------------------------------------------------------------------- random

UnitResult random_unit(const SearchConfig& cfg, const CompleteGraph& g, const std::vector<std::vector<u128>>& pascal,
                       u128 z_total, std::uint64_t unit) {
  UnitResult out;
  const int m = g.edge_count();
  const int k = cfg.n - 3;
  Xorshift64Star rng(stream_seed(cfg.seed, unit));
  const std::uint64_t lo = unit * kRandomBlockSize;
  const std::uint64_t hi = std::min(cfg.samples, lo + kRandomBlockSize);
  std::vector<Label> labels(static_cast<std::size_t>(m));
  for (std::uint64_t i = lo; i < hi; ++i) {
    // Uniform Z by unranking a uniform rank (lexicographic order).
    u128 rank = rng.below128(z_total);
    std::fill(labels.begin(), labels.end(), Label::T);
    int next = 0;
    for (int slot = 0; slot < k; ++slot) {
      for (int c = next;; ++c) {
        const u128 block = pascal[static_cast<std::size_t>(m - c - 1)][static_cast<std::size_t>(k - slot - 1)];
        if (rank < block) {
          labels[static_cast<std::size_t>(c)] = Label::Z;
          next = c + 1;
          break;
        }
        rank -= block;
      }
    }
    // Free edges in id order take S/T from successive generator words,
    // least significant bit first.
    std::uint64_t word = 0;
    int used = 64;
    for (auto& c : labels) {
      if (c == Label::Z) continue;
      if (used == 64) {
        word = rng.next();
        used = 0;
      }
      if ((word >> used++) & 1U) c = Label::S;
    }
    EdgePartition p(g, labels, PartitionMode::theorem);
    ++out.counters.partitions_checked;
    if (!incidence_sums(degree_profile(p)).bound_holds() && out.violations.size() < kMaxStoredViolations)
      out.violations.push_back(std::move(p));
  }
  return out;
}

// ------------------------------------------------------------------- profile

// z multisets: partitions of 2(n-3) into at most n parts, each at most n-3,
// in descending lexicographic order.
std::vector<std::vector<int>> z_multisets(int n) {
  const int k = n - 3;
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == n) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, 2 * k, k);
  return out;
}

// Multisets of size r drawn from {1..k}, split by parity of their sum.
struct ParityMultisets {
  std::vector<std::vector<std::array<std::uint64_t, 2>>> table;  // [k][r][parity]

  explicit ParityMultisets(int max) : table(static_cast<std::size_t>(max + 1)) {
    for (int k = 0; k <= max; ++k) {
      auto& row = table[static_cast<std::size_t>(k)];
      row.assign(static_cast<std::size_t>(max + 1), {0, 0});
      for (int r = 0; r <= max; ++r) {
        if (k == 0) {
          row[static_cast<std::size_t>(r)] = {r == 0 ? 1U : 0U, 0};
          continue;
        }
        const auto& prev = table[static_cast<std::size_t>(k - 1)];
        for (int c = 0; c <= r; ++c) {
          const int flip = (c * k) & 1;
          for (int par = 0; par < 2; ++par) {
            auto& cell = row[static_cast<std::size_t>(r)][static_cast<std::size_t>(par)];
            cell = checked_add(cell, prev[static_cast<std::size_t>(r - c)][static_cast<std::size_t>(par ^ flip)]);
          }
        }
      }
    }
  }

  std::uint64_t at(int k, int r, int par) const {
    return table[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)][static_cast<std::size_t>(par)];
  }
};

// Per-vertex terms. With d = n-1-z and t = d-s:
//   f(s) = s(t - z) = (s t) - (z s)  so  sum f = I_ST - I_ZS,
//   g(s) = t(s - z) = (s t) - (z t)  so  sum g = I_ST - I_ZT.
// A violation needs sum f <= -1 and sum g <= -1, hence
// a*sum f + b*sum g <= -(a+b) for every a, b >= 0. Each weighted sum splits
// over vertices, so its minimum over all completions is a cheap exact DP;
// a subtree whose minimum exceeds -(a+b) for some weight pair holds no
// violation.
constexpr std::array<std::pair<int, int>, 7> kWeights = {{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}}};
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

class ProfileUnit {
 public:
  ProfileUnit(const SearchConfig& cfg, const ParityMultisets& pm, const std::vector<int>& parts)
      : cfg_(cfg), pm_(pm), n_(cfg.n) {
    std::map<int, int, std::greater<>> mult;
    for (int x : parts) ++mult[x];
    const int zeros = n_ - static_cast<int>(parts.size());
    if (zeros > 0) mult[0] += zeros;
    for (auto [zv, m] : mult) groups_.push_back({zv, m, n_ - 1 - zv, {}, {}, {}});
    const std::size_t gc = groups_.size();

    for (std::size_t w = 0; w < kWeights.size(); ++w) {
      auto [a, b] = kWeights[w];
      for (auto& gr : groups_) {
        auto h = [&](int s) {
          const int t = gr.d - s;
          return static_cast<std::int64_t>(a) * s * (t - gr.z) + static_cast<std::int64_t>(b) * t * (s - gr.z);
        };
        gr.h0[w] = h(0);
        gr.hd[w] = h(gr.d);
        gr.prefix_min[w].assign(static_cast<std::size_t>(gr.d), kInf);  // index L: min over 1..L
        for (int s = 1; s < gr.d; ++s)
          gr.prefix_min[w][static_cast<std::size_t>(s)] = std::min(gr.prefix_min[w][static_cast<std::size_t>(s - 1)], h(s));
      }
      // rest_min[w][j][pl][ql]: full groups j.. with exactly pl s-zeros, ql t-zeros.
      auto& table = rest_min_[w];
      table.assign(gc + 1, std::vector<std::vector<std::int64_t>>(
                               static_cast<std::size_t>(cfg.p + 1), std::vector<std::int64_t>(static_cast<std::size_t>(cfg.q + 1), kInf)));
      table[gc][0][0] = 0;
      for (std::size_t j = gc; j-- > 0;)
        for (int pl = 0; pl <= cfg.p; ++pl)
          for (int ql = 0; ql <= cfg.q; ++ql)
            table[j][static_cast<std::size_t>(pl)][static_cast<std::size_t>(ql)] =
                group_min(w, j, groups_[j].m, groups_[j].d, pl, ql);
    }

    rest_count_.assign(gc + 1, std::vector<std::vector<std::array<std::uint64_t, 2>>>(
                                   static_cast<std::size_t>(cfg.p + 1),
                                   std::vector<std::array<std::uint64_t, 2>>(static_cast<std::size_t>(cfg.q + 1), {0, 0})));
    rest_count_[gc][0][0] = {1, 0};
    for (std::size_t j = gc; j-- > 0;)
      for (int pl = 0; pl <= cfg.p; ++pl)
        for (int ql = 0; ql <= cfg.q; ++ql)
          for (int par = 0; par < 2; ++par)
            rest_count_[j][static_cast<std::size_t>(pl)][static_cast<std::size_t>(ql)][static_cast<std::size_t>(par)] =
                group_count(j, groups_[j].m, groups_[j].d, pl, ql, par);
  }

  UnitResult run() {
    s_.clear();
    z_.clear();
    dfs(0, groups_.empty() ? 0 : groups_[0].m, groups_.empty() ? 0 : groups_[0].d, 0, 0, 0, 0, 0);
    return std::move(out_);
  }

 private:
  struct Group {
    int z;
    int m;
    int d;
    std::array<std::int64_t, kWeights.size()> h0{};
    std::array<std::int64_t, kWeights.size()> hd{};
    std::array<std::vector<std::int64_t>, kWeights.size()> prefix_min;
  };

  // Min weighted sum over r vertices of group j with s <= cap, plus full
  // later groups, using exactly pl s-zeros and ql t-zeros.
  std::int64_t group_min(std::size_t w, std::size_t j, int r, int cap, int pl, int ql) const {
    const Group& gr = groups_[j];
    const int interior_cap = std::min(cap, gr.d - 1);
    const std::int64_t hmin = interior_cap >= 1 ? gr.prefix_min[w][static_cast<std::size_t>(interior_cap)] : kInf;
    std::int64_t best = kInf;
    for (int a = 0; a <= std::min(r, pl); ++a) {
      const int max_b = cap == gr.d ? std::min(r - a, ql) : 0;
      for (int b = 0; b <= max_b; ++b) {
        const int rest = r - a - b;
        if (rest > 0 && hmin >= kInf) continue;
        const std::int64_t later = rest_min_[w][j + 1][static_cast<std::size_t>(pl - a)][static_cast<std::size_t>(ql - b)];
        if (later >= kInf) continue;
        best = std::min(best, a * gr.h0[w] + b * gr.hd[w] + rest * (rest > 0 ? hmin : 0) + later);
      }
    }
    return best;
  }

  // Completions of r vertices in group j (s non-increasing, s <= cap) and
  // full later groups with exactly pl s-zeros and ql t-zeros whose s-sum,
  // added to parity `par`, is even.
  std::uint64_t group_count(std::size_t j, int r, int cap, int pl, int ql, int par) const {
    const Group& gr = groups_[j];
    const int interior_cap = std::max(0, std::min(cap, gr.d - 1));
    std::uint64_t total = 0;
    for (int a = 0; a <= std::min(r, pl); ++a) {
      const int max_b = cap == gr.d ? std::min(r - a, ql) : 0;
      for (int b = 0; b <= max_b; ++b) {
        const int rest = r - a - b;
        for (int pi = 0; pi < 2; ++pi) {
          const std::uint64_t ways = pm_.at(interior_cap, rest, pi);
          if (ways == 0) continue;
          const int np = par ^ ((b * gr.d) & 1) ^ pi;
          const std::uint64_t later =
              rest_count_[j + 1][static_cast<std::size_t>(pl - a)][static_cast<std::size_t>(ql - b)][static_cast<std::size_t>(np)];
          total = checked_add(total, checked_mul(ways, later));
        }
      }
    }
    return total;
  }

  void dfs(std::size_t j, int r, int cap, int pz, int qz, int par, std::int64_t f_sum, std::int64_t g_sum) {
    if (j < groups_.size() && r == 0) {
      const std::size_t nj = j + 1;
      if (nj < groups_.size()) {
        dfs(nj, groups_[nj].m, groups_[nj].d, pz, qz, par, f_sum, g_sum);
      } else {
        dfs(nj, 0, 0, pz, qz, par, f_sum, g_sum);
      }
      return;
    }
    const int pl = cfg_.p - pz, ql = cfg_.q - qz;
    if (pl < 0 || ql < 0) return;
    if (j == groups_.size()) {
      if (pl == 0 && ql == 0 && par == 0) leaf(f_sum, g_sum);
      return;
    }
    const std::uint64_t below = group_count(j, r, cap, pl, ql, par);
    if (below == 0) return;
    if (cfg_.prune && !cfg_.realize_all) {
      for (std::size_t w = 0; w < kWeights.size(); ++w) {
        auto [a, b] = kWeights[w];
        const std::int64_t lb = group_min(w, j, r, cap, pl, ql);
        if (lb >= kInf || a * f_sum + b * g_sum + lb > -(a + b)) {
          out_.counters.profiles_checked = checked_add(out_.counters.profiles_checked, below);
          ++out_.counters.subtrees_pruned;
          return;
        }
      }
    }
    const Group& gr = groups_[j];
    for (int s = cap; s >= 0; --s) {
      const int t = gr.d - s;
      s_.push_back(s);
      z_.push_back(gr.z);
      dfs(j, r - 1, s, pz + (s == 0), qz + (t == 0), par ^ (s & 1),
          f_sum + static_cast<std::int64_t>(s) * (t - gr.z), g_sum + static_cast<std::int64_t>(t) * (s - gr.z));
      s_.pop_back();
      z_.pop_back();
    }
  }

  void leaf(std::int64_t f_sum, std::int64_t g_sum) {
    ++out_.counters.profiles_checked;
    ++out_.counters.profiles_evaluated;
    const bool violates = f_sum < 0 && g_sum < 0;
    if (!violates && !cfg_.realize_all) return;
    const DegreeProfile profile = DegreeProfile::from_sz(n_, s_, z_).sorted();
    std::optional<ProfileRealization> real;
    if (cfg_.realize_all) {
      real = realize_profile(profile);
      if (real->realizable()) {
        ++out_.counters.realizable_profiles;
        if (cfg_.collect_profiles) out_.realizable.push_back(profile);
      }
    }
    if (!violates) return;
    ++out_.counters.relaxation_violations;
    if (out_.relaxation_samples.size() < kMaxRelaxationSamples) out_.relaxation_samples.push_back(profile);
    if (!real) real = realize_profile(profile);
    if (real->realizable()) {
      ++out_.counters.realizable_violations;
      if (out_.violations.size() < kMaxStoredViolations) out_.violations.push_back(*real->witness);
    }
  }

  const SearchConfig& cfg_;
  const ParityMultisets& pm_;
  int n_;
  std::vector<Group> groups_;
  std::array<std::vector<std::vector<std::vector<std::int64_t>>>, kWeights.size()> rest_min_;
  std::vector<std::vector<std::vector<std::array<std::uint64_t, 2>>>> rest_count_;
  std::vector<int> s_;
  std::vector<int> z_;
  UnitResult out_;
};

void validate(const SearchConfig& cfg) {
  if (cfg.n < 3) throw SearchConfigError("n must be at least 3");
  switch (cfg.mode) {
    case SearchMode::exhaustive: {
      const int cap = cfg.use_symmetry ? kExhaustiveSymmetricMaxN : kExhaustiveMaxN;
      if (cfg.n > cap && !cfg.allow_large) {
        throw SearchConfigError("exhaustive search is capped at n <= " + std::to_string(cap) +
                                (cfg.use_symmetry ? "" : " (n <= 8 with --symmetry)") +
                                "; use --mode random or --mode profile for larger n, or --allow-large to override");
      }
      break;
    }
    case SearchMode::random:
      if (cfg.samples < 1) throw SearchConfigError("random search needs --samples >= 1");
      break;
    case SearchMode::profile:
      if (cfg.p < 0 || cfg.q < 0) throw SearchConfigError("profile search needs p, q >= 0");
      if (cfg.n > kProfileMaxN && !cfg.allow_large) {
        throw SearchConfigError("profile search is capped at n <= " + std::to_string(kProfileMaxN) +
                                "; use --allow-large to override");
      }
      if (cfg.collect_profiles && !cfg.realize_all) throw SearchConfigError("collect_profiles requires realize_all");
      break;
  }
}

}  // namespace

SearchCounters& SearchCounters::operator+=(const SearchCounters& o) {
  partitions_checked = checked_add(partitions_checked, o.partitions_checked);
  classes_checked = checked_add(classes_checked, o.classes_checked);
  raw_equivalent = checked_add(raw_equivalent, o.raw_equivalent);
  profiles_checked = checked_add(profiles_checked, o.profiles_checked);
  profiles_evaluated = checked_add(profiles_evaluated, o.profiles_evaluated);
  subtrees_pruned = checked_add(subtrees_pruned, o.subtrees_pruned);
  relaxation_violations = checked_add(relaxation_violations, o.relaxation_violations);
  realizable_violations = checked_add(realizable_violations, o.realizable_violations);
  realizable_profiles = checked_add(realizable_profiles, o.realizable_profiles);
  return *this;
}

std::string_view to_string(SearchMode mode) {
  switch (mode) {
    case SearchMode::exhaustive: return "exhaustive";
    case SearchMode::random: return "random";
    case SearchMode::profile: return "profile";
  }
  return "exhaustive";
}

SearchMode search_mode_from_string(std::string_view s) {
  if (s == "exhaustive") return SearchMode::exhaustive;
  if (s == "random") return SearchMode::random;
  if (s == "profile") return SearchMode::profile;
  throw SearchConfigError("unknown search mode '" + std::string(s) + "'");
}

std::uint64_t theorem_partition_count(int n) {
  const CompleteGraph g(n);
  const int free_count = g.edge_count() - (n - 3);
  if (free_count > 63) throw std::overflow_error("partition count exceeds 64 bits");
  return checked_mul(binomial64(g.edge_count(), n - 3), std::uint64_t{1} << free_count);
}

SearchReport run_search(const SearchConfig& config) {
  validate(config);
  const auto started = std::chrono::steady_clock::now();
  SearchReport report;
  report.config = config;

  // Work plan; the unit count is part of the checkpoint contract.
  std::optional<ExhaustivePlan> plan;
  std::vector<EdgeSetClass> classes;
  std::vector<std::vector<u128>> pascal;
  u128 z_total = 0;
  std::vector<std::vector<int>> zsets;
  std::optional<ParityMultisets> pm;
  switch (config.mode) {
    case SearchMode::exhaustive:
      if (config.use_symmetry) {
        classes = edge_set_classes(config.n, config.n - 3);
        if (CompleteGraph(config.n).edge_count() - (config.n - 3) > 62)
          throw SearchConfigError("symmetric search: too many free edges");
        report.units_total = classes.size();
      } else {
        plan = plan_exhaustive(config.n);
        report.units_total = (plan->z_total + plan->z_per_unit - 1) / plan->z_per_unit;
      }
      break;
    case SearchMode::random: {
      const CompleteGraph g(config.n);
      try {
        z_total = binomial(g.edge_count(), config.n - 3);
      } catch (const std::overflow_error&) {
        throw SearchConfigError("random search: C(m, n-3) exceeds 128 bits for n=" + std::to_string(config.n));
      }
      pascal.assign(static_cast<std::size_t>(g.edge_count() + 1), std::vector<u128>(static_cast<std::size_t>(config.n - 2), 0));
      for (int i = 0; i <= g.edge_count(); ++i)
        for (int j = 0; j <= config.n - 3; ++j)
          pascal[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              j == 0 ? 1 : (i == 0 ? 0 : pascal[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] +
                                              pascal[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)]);
      report.units_total = (config.samples + kRandomBlockSize - 1) / kRandomBlockSize;
      break;
    }
    case SearchMode::profile: {
      const std::int64_t pq = static_cast<std::int64_t>(config.p) * config.q;
      if (config.p + config.q > config.n) {
        report.vacuous = true;
        report.vacuous_reason = "p + q > n: P and Q are disjoint subsets of the n vertices";
      } else if (pq > config.n - 3) {
        report.vacuous = true;
        report.vacuous_reason = "p*q = " + std::to_string(pq) + " > n-3 = " + std::to_string(config.n - 3) +
                                ": every P-Q pair forces its own Z edge";
      }
      if (!report.vacuous) {
        zsets = z_multisets(config.n);
        pm.emplace(config.n);
        report.units_total = zsets.size();
      }
      break;
    }
  }

  if (!config.checkpoint_path.empty()) resume_from_checkpoint(config.checkpoint_path, report);

  switch (config.mode) {
    case SearchMode::exhaustive:
      if (config.use_symmetry) {
        const CompleteGraph g(config.n);
        run_units(report, [&](std::uint64_t u) { return symmetric_unit(g, classes[static_cast<std::size_t>(u)]); });
      } else {
        run_units(report, [&](std::uint64_t u) { return exhaustive_unit(*plan, u); });
      }
      break;
    case SearchMode::random: {
      const CompleteGraph g(config.n);
      run_units(report, [&](std::uint64_t u) { return random_unit(config, g, pascal, z_total, u); });
      break;
    }
    case SearchMode::profile:
      run_units(report, [&](std::uint64_t u) {
        return ProfileUnit(config, *pm, zsets[static_cast<std::size_t>(u)]).run();
      });
      break;
  }
  std::sort(report.realizable_set.begin(), report.realizable_set.end());
  report.checkpoint_id = make_checkpoint_id(report);
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

SearchReport exhaustive_search(int n, bool use_symmetry, unsigned workers) {
  SearchConfig c;
  c.n = n;
  c.mode = SearchMode::exhaustive;
  c.use_symmetry = use_symmetry;
  c.workers = workers;
  return run_search(c);
}

SearchReport random_search(int n, std::uint64_t samples, std::uint64_t seed, unsigned workers) {
  SearchConfig c;
  c.n = n;
  c.mode = SearchMode::random;
  c.samples = samples;
  c.seed = seed;
  c.workers = workers;
  return run_search(c);
}

SearchReport profile_search(int n, int p, int q, unsigned workers) {
  SearchConfig c;
  c.n = n;
  c.mode = SearchMode::profile;
  c.p = p;
  c.q = q;
  c.workers = workers;
  return run_search(c);
}

std::vector<DegreeProfile> enumerated_profiles(int n, int p, int q) {
  const CompleteGraph g(n);
  const int k = n - 3;
  std::set<DegreeProfile> seen;
  std::vector<int> comb(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) comb[static_cast<std::size_t>(i)] = i;
  do {
    const ZLayout lay(g, comb);
    const std::uint64_t total = std::uint64_t{1} << lay.free_ends.size();
    for (std::uint64_t mask = 0; mask < total; ++mask) {
      std::vector<int> s(static_cast<std::size_t>(n), 0);
      for (std::size_t j = 0; j < lay.free_ends.size(); ++j) {
        if ((mask >> j) & 1U) {
          ++s[static_cast<std::size_t>(lay.free_ends[j].first)];
          ++s[static_cast<std::size_t>(lay.free_ends[j].second)];
        }
      }
      auto d = DegreeProfile::from_sz(n, s, lay.z);
      const auto pz = std::count(d.s.begin(), d.s.end(), 0);
      const auto qz = std::count(d.t.begin(), d.t.end(), 0);
      if (pz == p && qz == q) seen.insert(d.sorted());
    }
  } while (k > 0 && next_combination(comb, g.edge_count()));
  return {seen.begin(), seen.end()};
}

}  // namespace knlab
