#ifndef OFFER_WALKS_H_
#define OFFER_WALKS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "offer/graph.h"
#include "offer/motif.h"
#include "offer/train_config.h"

namespace offer {

// Flat storage for r * |V| walks. Walks stop early at nodes with an empty
// transition row, so lengths vary.
class WalkCorpus {
 public:
  WalkCorpus(NodeId node_count, int walks_per_node, int walk_length)
      : node_count_(node_count),
        walks_per_node_(walks_per_node),
        walk_length_(walk_length),
        offsets_{0} {}

  NodeId node_count() const { return node_count_; }
  int walks_per_node() const { return walks_per_node_; }
  int walk_length() const { return walk_length_; }

  std::size_t size() const { return offsets_.size() - 1; }
  bool empty() const { return size() == 0; }
  std::size_t token_count() const { return nodes_.size(); }
  std::span<const NodeId> walk(std::size_t i) const {
    return {nodes_.data() + offsets_[i], nodes_.data() + offsets_[i + 1]};
  }

  void append(std::span<const NodeId> walk) {
    nodes_.insert(nodes_.end(), walk.begin(), walk.end());
    offsets_.push_back(nodes_.size());
  }

  friend bool operator==(const WalkCorpus&, const WalkCorpus&) = default;

 private:
  NodeId node_count_;
  int walks_per_node_;
  int walk_length_;
  std::vector<NodeId> nodes_;
  std::vector<std::size_t> offsets_;
};

// First-order walks: walks_per_node passes over all nodes (in a per-pass
// shuffled order), each walk drawing its next step from the transition row
// of the current node. TransitionModel::uniform gives classic DeepWalk.
// Walk k from node v uses its own generator seeded from (seed, v, k).
WalkCorpus generate_walks(const Graph& g, const TransitionModel& transitions,
                          const TrainConfig& config, std::uint64_t seed);

// Second-order step distribution over g.neighbors(current) having arrived
// from `previous`: weight alpha_pq(previous, x) * mass(current, x),
// renormalized, where alpha is 1/p for x == previous, 1 for x adjacent to
// previous and 1/q otherwise.
std::vector<double> node2vec_step_distribution(const Graph& g,
                                               const TransitionModel& transitions,
                                               double p, double q, NodeId previous,
                                               NodeId current);

// node2vec walks. The first step of every walk is first-order.
WalkCorpus node2vec_walks(const Graph& g, const TransitionModel& transitions,
                          double p, double q, const TrainConfig& config,
                          std::uint64_t seed);

}  // namespace offer

#endif  // OFFER_WALKS_H_
