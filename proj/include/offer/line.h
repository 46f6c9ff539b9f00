#ifndef OFFER_LINE_H_
#define OFFER_LINE_H_

#include <cstdint>

#include "offer/embedding.h"
#include "offer/graph.h"
#include "offer/motif.h"
#include "offer/train_config.h"

namespace offer {

// LINE by edge sampling. Edges are drawn with probability proportional to
// their weight and oriented uniformly at random; negatives are drawn from
// weighted degree^0.75. config.line_order picks first-order proximity
// (shared vertex vectors), second-order proximity (vertex vs. context
// vectors), or both: dim/2 (rounded up) first-order dimensions followed by
// the second-order ones, each half L2-normalized per row.
EmbeddingMatrix train_line(const Graph& g, const WeightedAdjacency& weights,
                           const TrainConfig& config, std::uint64_t seed);

// Unit edge weights (baseline LINE).
EmbeddingMatrix train_line(const Graph& g, const TrainConfig& config, std::uint64_t seed);

}  // namespace offer

#endif  // OFFER_LINE_H_
