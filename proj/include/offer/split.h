#ifndef OFFER_SPLIT_H_
#define OFFER_SPLIT_H_

#include <cstdint>
#include <vector>

#include "offer/graph.h"

namespace offer {

struct LinkPredSplit {
  Graph train_graph;
  std::vector<Edge> positive_test;
  std::vector<Edge> negative_test;
  double holdout_fraction = 0.0;
  std::uint64_t seed = 0;
};

// Holds out floor(fraction * |E|) edges chosen uniformly at random and pairs
// them with as many distinct non-edges sampled uniformly. The training graph
// keeps every node. With protect_connectivity, an edge is only removed when
// its endpoints stay connected in the remaining graph; candidates that fail
// are skipped in favor of the next one in the shuffled order.
//
// Throws std::invalid_argument when fraction is outside (0, 1), when fewer
// than one edge would be held out, when the protected holdout cannot reach
// the target count, or when the graph has too few non-edges.
LinkPredSplit make_split(const Graph& g, double holdout_fraction, std::uint64_t seed,
                         bool protect_connectivity = true);

}  // namespace offer

#endif  // OFFER_SPLIT_H_
