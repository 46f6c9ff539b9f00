#include "offer/graph.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "offer/rng.h"

namespace offer {

namespace {

std::uint64_t pack(Edge e) {
  return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

bool is_separator(char c, char delimiter) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' ||
         c == '\f' || c == delimiter;
}

std::vector<std::string_view> tokenize(std::string_view line, char delimiter) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_separator(line[i], delimiter)) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_separator(line[i], delimiter)) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace

Graph::Graph(NodeId node_count, std::span<const Edge> edges,
             std::vector<std::string> labels)
    : node_count_(node_count), labels_(std::move(labels)) {
  if (!labels_.empty() && labels_.size() != node_count_) {
    throw std::invalid_argument("label count does not match node count");
  }
  edges_.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.first >= node_count_ || e.second >= node_count_) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (e.first == e.second) continue;
    edges_.push_back(make_edge(e.first, e.second));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  offsets_.assign(static_cast<std::size_t>(node_count_) + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.first + 1];
    ++offsets_[e.second + 1];
  }
  for (std::size_t v = 0; v < node_count_; ++v) offsets_[v + 1] += offsets_[v];

  adjacency_.resize(2 * edges_.size());
  slot_edge_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted by (first, second), so both scatters below append in
  // ascending neighbor order: lower neighbors of v arrive (as e.second == v)
  // before any edge with e.first == v. A pass over lower neighbors followed by
  // a pass over higher neighbors keeps every list sorted.
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[cursor[e.second]] = e.first;
    slot_edge_[cursor[e.second]++] = id;
  }
  for (EdgeId id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    adjacency_[cursor[e.first]] = e.second;
    slot_edge_[cursor[e.first]++] = id;
  }
}

std::int64_t Graph::find_edge(NodeId a, NodeId b) const {
  if (a >= node_count_ || b >= node_count_ || a == b) return -1;
  if (degree(a) > degree(b)) std::swap(a, b);
  const auto nbrs = neighbors(a);
  const auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
  if (it == nbrs.end() || *it != b) return -1;
  return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

bool Graph::has_edge(NodeId a, NodeId b) const { return find_edge(a, b) >= 0; }

std::string Graph::label(NodeId v) const {
  return labels_.empty() ? std::to_string(v) : labels_[v];
}

Graph parse_edge_list(std::istream& in, const ParseOptions& options) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  auto intern = [&](std::string_view token) {
    auto [it, inserted] =
        ids.try_emplace(std::string(token), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r\v\f");
    if (first == std::string::npos) continue;
    if (options.comment_chars.find(line[first]) != std::string::npos) continue;
    const auto tokens = tokenize(line, options.delimiter);
    if (tokens.size() < 2) {
      throw ParseError("expected two node ids, got " +
                           std::to_string(tokens.size()) + " token(s)",
                       line_no);
    }
    if (tokens[0] == tokens[1]) continue;  // self-loop
    const NodeId a = intern(tokens[0]);
    const NodeId b = intern(tokens[1]);
    edges.push_back(make_edge(a, b));
  }
  if (edges.empty()) throw ParseError("no edges", 0);
  const auto n = static_cast<NodeId>(labels.size());
  return Graph(n, edges, std::move(labels));
}

Graph parse_edge_list(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in, options);
}

Graph load_edge_list(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return parse_edge_list(in, options);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (const Edge& e : g.edges()) {
    out << g.label(e.first) << ' ' << g.label(e.second) << '\n';
  }
}

GraphStats graph_stats(const Graph& g) {
  GraphStats s;
  s.num_nodes = g.node_count();
  s.num_edges = g.edge_count();
  for (NodeId v = 0; v < g.node_count(); ++v) {
    s.max_degree = std::max(s.max_degree, g.degree(v));
  }
  const double n = static_cast<double>(s.num_nodes);
  const double m = static_cast<double>(s.num_edges);
  s.avg_degree = n > 0 ? 2.0 * m / n : 0.0;
  s.density = n > 1 ? 2.0 * m / (n * (n - 1.0)) : 0.0;
  return s;
}

std::string to_json(const GraphStats& stats) {
  nlohmann::ordered_json j;
  j["num_nodes"] = stats.num_nodes;
  j["num_edges"] = stats.num_edges;
  j["max_degree"] = stats.max_degree;
  j["avg_degree"] = stats.avg_degree;
  j["density"] = stats.density;
  return j.dump();
}

std::vector<std::size_t> degree_sequence(const Graph& g) {
  std::vector<std::size_t> degrees(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) degrees[v] = g.degree(v);
  return degrees;
}

Graph null_model_rewire(const Graph& g, int swaps_per_edge, std::uint64_t seed) {
  if (swaps_per_edge < 1) throw std::invalid_argument("swaps_per_edge must be >= 1");
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  if (edges.size() < 2) return g;

  std::unordered_set<std::uint64_t> present;
  present.reserve(edges.size() * 2);
  for (const Edge& e : edges) present.insert(pack(e));

  Rng rng(seed);
  const std::uint64_t attempts =
      static_cast<std::uint64_t>(swaps_per_edge) * edges.size();
  for (std::uint64_t t = 0; t < attempts; ++t) {
    const std::size_t i = rng.below(edges.size());
    const std::size_t j = rng.below(edges.size());
    const bool flip = rng.below(2) == 1;
    if (i == j) continue;
    // (a,b),(c,d) -> (a,d),(c,b), or with the second edge reversed
    // (a,c),(d,b).
    const NodeId a = edges[i].first;
    const NodeId b = edges[i].second;
    const NodeId c = flip ? edges[j].second : edges[j].first;
    const NodeId d = flip ? edges[j].first : edges[j].second;
    if (a == d || c == b) continue;
    const Edge e1 = make_edge(a, d);
    const Edge e2 = make_edge(c, b);
    if (present.contains(pack(e1)) || present.contains(pack(e2))) continue;
    present.erase(pack(edges[i]));
    present.erase(pack(edges[j]));
    present.insert(pack(e1));
    present.insert(pack(e2));
    edges[i] = e1;
    edges[j] = e2;
  }
  return Graph(g.node_count(), edges, g.labels());
}

}  // namespace offer
