#ifndef OFFER_SGNS_H_
#define OFFER_SGNS_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "offer/embedding.h"
#include "offer/train_config.h"
#include "offer/walks.h"

namespace offer {

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Skip-gram negative-sampling objective of one (center, context) pair:
//   log sigmoid(u . v) + sum_k log sigmoid(-u . n_k)
double sgns_pair_objective(std::span<const double> center,
                           std::span<const double> context,
                           const std::vector<std::span<const double>>& negatives);

struct SgnsPairGradient {
  std::vector<double> center;
  std::vector<double> context;
  std::vector<std::vector<double>> negatives;
};

// Analytic gradient of sgns_pair_objective with respect to every vector.
SgnsPairGradient sgns_pair_gradient(std::span<const double> center,
                                    std::span<const double> context,
                                    const std::vector<std::span<const double>>& negatives);

// Skip-gram with negative sampling over a walk corpus. Pairs come from a
// symmetric window of config.window positions; negatives are drawn from the
// corpus unigram distribution raised to 0.75. Plain SGD with the learning
// rate decayed linearly over all epochs. Updates run sequentially in corpus
// order, so the result depends only on (corpus, config, seed). Returns the
// center (input) vectors.
EmbeddingMatrix train_sgns(const WalkCorpus& corpus, const TrainConfig& config,
                           std::uint64_t seed);

}  // namespace offer

#endif  // OFFER_SGNS_H_
