#ifndef OFFER_MOTIF_H_
#define OFFER_MOTIF_H_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "offer/graph.h"

namespace offer {

enum class MotifKind { kTriangle };

struct MotifSpec {
  MotifKind kind = MotifKind::kTriangle;

  // |V_M|, the number of nodes in one motif instance.
  int node_count() const {
    switch (kind) {
      case MotifKind::kTriangle:
        return 3;
    }
    return 0;
  }

  static MotifSpec triangle() { return {MotifKind::kTriangle}; }
  friend bool operator==(const MotifSpec&, const MotifSpec&) = default;
};

// Motif node degree (MND) and motif edge degree (MED) of every node and edge.
struct MotifStats {
  MotifSpec motif;
  std::vector<std::uint64_t> node_degree;
  // The graph's edges in EdgeId order and their motif degrees.
  std::vector<Edge> edges;
  std::vector<std::uint64_t> edge_degree;
  std::uint64_t total_motifs = 0;

  // MED of {a, b}; 0 for non-edges.
  std::uint64_t edge_degree_of(NodeId a, NodeId b) const;
  std::uint64_t max_edge_degree() const;

  // True when these stats were computed on a graph with g's edge set.
  bool matches(const Graph& g) const;
};

// Exact triangle enumeration by sorted neighbor-list intersection; each
// triangle i < j < k is found once.
MotifStats count_triangles(const Graph& g);

// Motif-biased adjacency: per-slot weights parallel to the graph's CSR
// layout. Entry (i,j) is 1 + MED(i,j)/|V_M| for edges in at least one motif,
// 1 for other edges and 0 for non-edges.
class WeightedAdjacency {
 public:
  WeightedAdjacency(const Graph& g, std::vector<double> edge_weights);

  // All edges weighted 1.
  static WeightedAdjacency unit(const Graph& g);

  NodeId node_count() const { return static_cast<NodeId>(offsets_.size() - 1); }
  // Weights parallel to g.neighbors(v) for the graph this was built from.
  std::span<const double> row(NodeId v) const {
    return {slot_weight_.data() + offsets_[v], slot_weight_.data() + offsets_[v + 1]};
  }
  std::span<const double> edge_weights() const { return edge_weight_; }
  double weighted_degree(NodeId v) const { return weighted_degree_[v]; }
  double weight(const Graph& g, NodeId a, NodeId b) const;

  // Coordinate format, one "i j weight" line per edge with i < j.
  void write_coo(const Graph& g, std::ostream& out) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<double> slot_weight_;
  std::vector<double> edge_weight_;
  std::vector<double> weighted_degree_;
};

WeightedAdjacency build_motif_adjacency(const Graph& g, const MotifStats& stats);

enum class TransitionMode {
  kUniform,     // every neighbor weight 1 (baseline walks)
  kStrictEq2,   // MED-proportional, uniform fallback on all-zero rows
  kSmoothedAm,  // proportional to the motif-biased adjacency
};

std::string_view to_string(TransitionMode mode);
TransitionMode parse_transition_mode(std::string_view name);

// Per-node distributions over neighbor lists. mass() keeps the unnormalized
// weights (MED, A_M entry, or 1 on fallback rows) so second-order walks can
// combine them with their own bias before renormalizing.
class TransitionModel {
 public:
  static TransitionModel uniform(const Graph& g);

  TransitionMode mode() const { return mode_; }
  NodeId node_count() const { return static_cast<NodeId>(offsets_.size() - 1); }
  std::span<const double> probabilities(NodeId v) const {
    return {prob_.data() + offsets_[v], prob_.data() + offsets_[v + 1]};
  }
  std::span<const double> mass(NodeId v) const {
    return {mass_.data() + offsets_[v], mass_.data() + offsets_[v + 1]};
  }
  bool empty_row(NodeId v) const { return offsets_[v] == offsets_[v + 1]; }
  // True when strict mode fell back to uniform on v's row.
  bool fallback_row(NodeId v) const { return fallback_[v] != 0; }

 private:
  friend TransitionModel build_transition_model(const Graph&, const MotifStats&,
                                                TransitionMode);
  TransitionModel(const Graph& g, TransitionMode mode, std::vector<double> mass);

  TransitionMode mode_;
  std::vector<std::size_t> offsets_;
  std::vector<double> mass_;
  std::vector<double> prob_;
  std::vector<char> fallback_;
};

TransitionModel build_transition_model(const Graph& g, const MotifStats& stats,
                                       TransitionMode mode);

std::string motif_stats_json(const MotifStats& stats);
void write_motif_csv(const Graph& g, const MotifStats& stats, std::ostream& out);

}  // namespace offer

#endif  // OFFER_MOTIF_H_
