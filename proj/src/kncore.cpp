#include "knlab/kncore.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>

namespace knlab {

namespace {

constexpr int kMaxVertices = 2000;

Label label_from_char(char c, bool& ok) {
  ok = true;
  switch (c) {
    case 'S': return Label::S;
    case 'T': return Label::T;
    case 'Z': return Label::Z;
    default: ok = false; return Label::T;
  }
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

CompleteGraph::CompleteGraph(int n) : n_(n), m_(0) {
  if (n < 3 || n > kMaxVertices) {
    throw std::domain_error("K_n requires 3 <= n <= " + std::to_string(kMaxVertices) + ", got n=" + std::to_string(n));
  }
  m_ = n * (n - 1) / 2;
  ends_.reserve(static_cast<std::size_t>(m_));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) ends_.emplace_back(u, v);
}

EdgeId CompleteGraph::edge_id(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) {
    throw std::domain_error("edge_id: invalid endpoints (" + std::to_string(u) + "," + std::to_string(v) +
                            ") for n=" + std::to_string(n_));
  }
  if (u > v) std::swap(u, v);
  return u * n_ - u * (u + 1) / 2 + (v - u - 1);
}

std::pair<Vertex, Vertex> CompleteGraph::endpoints(EdgeId e) const {
  if (e < 0 || e >= m_) throw std::domain_error("endpoints: edge id out of range");
  return ends_[static_cast<std::size_t>(e)];
}

std::string_view to_string(PartitionMode mode) {
  return mode == PartitionMode::theorem ? "theorem" : "general";
}

PartitionMode infer_mode(int n, int z_count) noexcept {
  return z_count == n - 3 ? PartitionMode::theorem : PartitionMode::general;
}

EdgePartition::EdgePartition(CompleteGraph ctx, std::vector<Label> labels, PartitionMode mode)
    : ctx_(std::move(ctx)), labels_(std::move(labels)), mode_(mode) {
  if (static_cast<int>(labels_.size()) != ctx_.edge_count()) {
    throw std::invalid_argument("partition needs " + std::to_string(ctx_.edge_count()) + " labels, got " +
                                std::to_string(labels_.size()));
  }
  if (mode_ == PartitionMode::theorem && count(Label::Z) != ctx_.n() - 3) {
    throw ModeError("theorem mode requires |Z| = n-3 = " + std::to_string(ctx_.n() - 3) + ", got |Z| = " +
                    std::to_string(count(Label::Z)));
  }
}

EdgePartition EdgePartition::from_labels(int n, std::vector<Label> labels) {
  const int z = static_cast<int>(std::count(labels.begin(), labels.end(), Label::Z));
  return EdgePartition(CompleteGraph(n), std::move(labels), infer_mode(n, z));
}

EdgePartition EdgePartition::from_string(int n, std::string_view text) {
  std::vector<Label> labels;
  labels.reserve(text.size());
  for (char c : text) {
    bool ok = false;
    labels.push_back(label_from_char(c, ok));
    if (!ok) throw std::invalid_argument(std::string("invalid label character '") + c + "'");
  }
  return from_labels(n, std::move(labels));
}

EdgePartition EdgePartition::from_edge_lists(int n, const std::vector<std::pair<Vertex, Vertex>>& s_edges,
                                             const std::vector<std::pair<Vertex, Vertex>>& z_edges) {
  CompleteGraph g(n);
  std::vector<Label> labels(static_cast<std::size_t>(g.edge_count()), Label::T);
  std::vector<bool> seen(labels.size(), false);
  auto put = [&](const auto& list, Label c) {
    for (auto [u, v] : list) {
      const auto e = static_cast<std::size_t>(g.edge_id(u, v));
      if (seen[e]) throw std::invalid_argument("edge listed twice");
      seen[e] = true;
      labels[e] = c;
    }
  };
  put(s_edges, Label::S);
  put(z_edges, Label::Z);
  return from_labels(n, std::move(labels));
}

int EdgePartition::count(Label c) const noexcept {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), c));
}

std::vector<EdgeId> EdgePartition::edges_with(Label c) const {
  std::vector<EdgeId> out;
  for (std::size_t e = 0; e < labels_.size(); ++e)
    if (labels_[e] == c) out.push_back(static_cast<EdgeId>(e));
  return out;
}

std::string EdgePartition::label_string() const {
  std::string s(labels_.size(), 'T');
  std::transform(labels_.begin(), labels_.end(), s.begin(), [](Label c) { return static_cast<char>(c); });
  return s;
}

DegreeProfile DegreeProfile::from_sz(int n, std::vector<int> s, std::vector<int> z) {
  DegreeProfile p;
  p.n = n;
  p.t.resize(s.size());
  for (std::size_t i = 0; i < s.size() && i < z.size(); ++i) p.t[i] = n - 1 - s[i] - z[i];
  p.s = std::move(s);
  p.z = std::move(z);
  return p;
}

std::optional<std::string> DegreeProfile::local_violation() const {
  const auto len = static_cast<std::size_t>(n);
  if (n < 3) return "n must be at least 3";
  if (s.size() != len || t.size() != len || z.size() != len) return "degree vectors must have length n";
  for (std::size_t i = 0; i < len; ++i) {
    if (s[i] < 0 || t[i] < 0 || z[i] < 0) return "negative degree at vertex " + std::to_string(i);
    if (s[i] + t[i] + z[i] != n - 1) {
      return "s+t+z != n-1 at vertex " + std::to_string(i) + " (" + std::to_string(s[i] + t[i] + z[i]) + ")";
    }
  }
  return std::nullopt;
}

std::int64_t DegreeProfile::sum_s() const noexcept { return std::accumulate(s.begin(), s.end(), std::int64_t{0}); }
std::int64_t DegreeProfile::sum_t() const noexcept { return std::accumulate(t.begin(), t.end(), std::int64_t{0}); }
std::int64_t DegreeProfile::sum_z() const noexcept { return std::accumulate(z.begin(), z.end(), std::int64_t{0}); }

DegreeProfile DegreeProfile::sorted() const {
  std::vector<std::tuple<int, int, int>> rows;
  rows.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) rows.emplace_back(s[i], t[i], z[i]);
  std::sort(rows.begin(), rows.end(), std::greater<>());
  DegreeProfile out;
  out.n = n;
  for (auto [a, b, c] : rows) {
    out.s.push_back(a);
    out.t.push_back(b);
    out.z.push_back(c);
  }
  return out;
}

DegreeProfile degree_profile(const EdgePartition& p) {
  const int n = p.n();
  DegreeProfile d;
  d.n = n;
  d.s.assign(static_cast<std::size_t>(n), 0);
  d.t.assign(static_cast<std::size_t>(n), 0);
  d.z.assign(static_cast<std::size_t>(n), 0);
  const auto& g = p.graph();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.endpoints(e);
    auto& vec = p.label(e) == Label::S ? d.s : p.label(e) == Label::T ? d.t : d.z;
    ++vec[static_cast<std::size_t>(u)];
    ++vec[static_cast<std::size_t>(v)];
  }
  return d;
}

std::string_view to_string(RealizationReason r) {
  switch (r) {
    case RealizationReason::none: return "none";
    case RealizationReason::parity: return "parity";
    case RealizationReason::bound: return "bound";
    case RealizationReason::exhausted_search: return "exhausted-search";
  }
  return "none";
}

std::string format_partition(const EdgePartition& p) {
  return "n=" + std::to_string(p.n()) + " labels=" + p.label_string();
}

EdgePartition parse_partition(std::string_view line, int line_no) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
  std::size_t pos = 0;
  auto expect = [&](std::string_view token) {
    if (line.substr(pos, token.size()) != token) {
      throw ParseError(line_no, static_cast<int>(pos) + 1, "expected '" + std::string(token) + "'");
    }
    pos += token.size();
  };
  expect("n=");
  int n = 0;
  const char* first = line.data() + pos;
  const char* last = line.data() + line.size();
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr == first) throw ParseError(line_no, static_cast<int>(pos) + 1, "expected vertex count");
  const auto n_col = static_cast<int>(pos) + 1;
  pos = static_cast<std::size_t>(ptr - line.data());
  if (n < 3 || n > kMaxVertices) throw ParseError(line_no, n_col, "vertex count out of range: " + std::to_string(n));
  expect(" labels=");
  const std::string_view body = line.substr(pos);
  const std::size_t m = static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
  std::vector<Label> labels;
  labels.reserve(m);
  for (std::size_t i = 0; i < body.size(); ++i) {
    bool ok = false;
    const Label c = label_from_char(body[i], ok);
    if (!ok) {
      throw ParseError(line_no, static_cast<int>(pos + i) + 1,
                       std::string("invalid label character '") + body[i] + "' at edge offset " + std::to_string(i));
    }
    if (i >= m) {
      throw ParseError(line_no, static_cast<int>(pos + i) + 1,
                       "too many labels: expected " + std::to_string(m) + " for n=" + std::to_string(n));
    }
    labels.push_back(c);
  }
  if (labels.size() != m) {
    throw ParseError(line_no, static_cast<int>(pos + body.size()) + 1,
                     "truncated labels: expected " + std::to_string(m) + ", got " + std::to_string(labels.size()) +
                         " (first missing edge offset " + std::to_string(labels.size()) + ")");
  }
  return EdgePartition::from_labels(n, std::move(labels));
}

std::vector<EdgePartition> read_partitions(std::istream& in) {
  std::vector<EdgePartition> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_partition(line, line_no));
  }
  if (out.empty()) throw ParseError(line_no + 1, 1, "no partition found");
  return out;
}

}  // namespace knlab
