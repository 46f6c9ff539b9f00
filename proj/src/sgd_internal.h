#ifndef OFFER_SRC_SGD_INTERNAL_H_
#define OFFER_SRC_SGD_INTERNAL_H_

#include <algorithm>
#include <span>
#include <vector>

#include "offer/embedding.h"
#include "offer/rng.h"
#include "offer/sgns.h"

namespace offer {

// d/d(score) of the log-likelihood of `label` under sigmoid(score).
inline double sgns_coefficient(double label, double score) {
  return label - sigmoid(score);
}

// Linear decay with the word2vec floor of 1e-4 * initial.
inline double decayed_rate(double initial, double step, double total_steps) {
  return initial * std::max(1e-4, 1.0 - step / total_steps);
}

// word2vec-style initialization: uniform in [-0.5/d, 0.5/d).
inline void init_uniform(EmbeddingMatrix& m, Rng& rng) {
  const double scale = 1.0 / static_cast<double>(m.dim());
  for (double& x : m.data()) x = (rng.uniform() - 0.5) * scale;
}

// One gradient-ascent step on log sigmoid(+-u.c): updates `target` in place
// and adds the step for `source` to `accum` (applied by the caller once all
// targets of the pair have been processed).
inline void sgd_target_update(std::span<const double> source, std::span<double> target,
                              double label, double lr, std::vector<double>& accum) {
  const double g = lr * sgns_coefficient(label, dot(source, target));
  for (std::size_t i = 0; i < source.size(); ++i) {
    accum[i] += g * target[i];
    target[i] += g * source[i];
  }
}

}  // namespace offer

#endif  // OFFER_SRC_SGD_INTERNAL_H_
