#ifndef OFFER_GRAPH_H_
#define OFFER_GRAPH_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace offer {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// Undirected edge stored with first < second.
struct Edge {
  NodeId first;
  NodeId second;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  // 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable undirected simple graph in CSR form.
//
// Edges are kept sorted lexicographically with first < second; EdgeId indexes
// that order. Every adjacency slot also records the id of its edge, so
// per-edge quantities can be read while scanning neighbor lists.
class Graph {
 public:
  // Builds from an arbitrary edge list over nodes [0, node_count). Self-loops
  // are dropped and duplicates (in either orientation) collapsed.
  Graph(NodeId node_count, std::span<const Edge> edges,
        std::vector<std::string> labels = {});

  NodeId node_count() const { return node_count_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Edge> edges() const { return edges_; }
  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident_edges(NodeId v) const {
    return {slot_edge_.data() + offsets_[v], slot_edge_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  // First adjacency slot of v; slots of v are [slot_begin(v), slot_begin(v+1)).
  std::size_t slot_begin(NodeId v) const { return offsets_[v]; }
  std::size_t slot_count() const { return adjacency_.size(); }

  bool has_edge(NodeId a, NodeId b) const;
  // Id of edge {a, b}, or -1 when absent.
  std::int64_t find_edge(NodeId a, NodeId b) const;

  // External identifier of v; falls back to the decimal id.
  std::string label(NodeId v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_count_ == b.node_count_ && a.edges_ == b.edges_ &&
           a.labels_ == b.labels_;
  }

 private:
  NodeId node_count_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
  std::vector<EdgeId> slot_edge_;
  std::vector<std::string> labels_;
};

struct GraphStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::size_t max_degree = 0;
  double avg_degree = 0.0;
  double density = 0.0;
};

struct ParseOptions {
  // Lines whose first non-blank character is one of these are skipped.
  std::string comment_chars = "#%";
  // Besides whitespace runs, a single occurrence of this character also
  // separates tokens.
  char delimiter = ',';
};

// Reads a whitespace- or comma-delimited edge list. Node ids are remapped to
// dense 0-based integers in order of first appearance; the original tokens
// become node labels. A third token (weight) is ignored.
Graph parse_edge_list(std::istream& in, const ParseOptions& options = {});
Graph parse_edge_list(std::string_view text, const ParseOptions& options = {});
Graph load_edge_list(const std::string& path, const ParseOptions& options = {});

// Writes "label label" per edge in edge-id order.
void write_edge_list(const Graph& g, std::ostream& out);

GraphStats graph_stats(const Graph& g);
std::string to_json(const GraphStats& stats);

// Degree-preserving rewiring by swaps_per_edge * |E| attempted double-edge
// swaps. Swaps that would create a self-loop or a parallel edge are skipped.
Graph null_model_rewire(const Graph& g, int swaps_per_edge, std::uint64_t seed);

std::vector<std::size_t> degree_sequence(const Graph& g);

}  // namespace offer

#endif  // OFFER_GRAPH_H_
