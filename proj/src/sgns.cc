#include "offer/sgns.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "offer/rng.h"
#include "sgd_internal.h"

namespace offer {

namespace {

double log_sigmoid(double x) {
  // Stable for large |x|.
  return x >= 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

}  // namespace

double sgns_pair_objective(std::span<const double> center,
                           std::span<const double> context,
                           const std::vector<std::span<const double>>& negatives) {
  double f = log_sigmoid(dot(center, context));
  for (const auto& n : negatives) f += log_sigmoid(-dot(center, n));
  return f;
}

SgnsPairGradient sgns_pair_gradient(std::span<const double> center,
                                    std::span<const double> context,
                                    const std::vector<std::span<const double>>& negatives) {
  const std::size_t d = center.size();
  SgnsPairGradient grad;
  grad.center.assign(d, 0.0);
  grad.context.assign(d, 0.0);

  const double gp = sgns_coefficient(1.0, dot(center, context));
  for (std::size_t i = 0; i < d; ++i) {
    grad.center[i] += gp * context[i];
    grad.context[i] = gp * center[i];
  }
  for (const auto& n : negatives) {
    const double gn = sgns_coefficient(0.0, dot(center, n));
    std::vector<double> gneg(d);
    for (std::size_t i = 0; i < d; ++i) {
      grad.center[i] += gn * n[i];
      gneg[i] = gn * center[i];
    }
    grad.negatives.push_back(std::move(gneg));
  }
  return grad;
}

EmbeddingMatrix train_sgns(const WalkCorpus& corpus, const TrainConfig& config,
                           std::uint64_t seed) {
  config.validate();
  if (corpus.empty() || corpus.token_count() == 0) {
    throw std::invalid_argument("empty walk corpus");
  }
  const std::size_t n = corpus.node_count();
  const std::size_t d = static_cast<std::size_t>(config.dim);

  std::vector<double> counts(n, 0.0);
  for (std::size_t w = 0; w < corpus.size(); ++w) {
    for (NodeId v : corpus.walk(w)) counts[v] += 1.0;
  }
  for (double& c : counts) c = std::pow(c, 0.75);
  const AliasTable noise(counts);

  Rng rng(seed);
  EmbeddingMatrix input(n, d);
  EmbeddingMatrix output(n, d);
  init_uniform(input, rng);

  // One "step" per center token; the learning rate decays over all of them.
  const double total_steps =
      static_cast<double>(config.epochs) * static_cast<double>(corpus.token_count());
  double step = 0.0;
  std::vector<double> accum(d);
  const std::ptrdiff_t window = config.window;

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    for (std::size_t w = 0; w < corpus.size(); ++w) {
      const auto walk = corpus.walk(w);
      const auto len = static_cast<std::ptrdiff_t>(walk.size());
      for (std::ptrdiff_t i = 0; i < len; ++i, step += 1.0) {
        const double lr = decayed_rate(config.learning_rate, step, total_steps);
        const auto u = input.row(walk[static_cast<std::size_t>(i)]);
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - window);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, i + window);
        for (std::ptrdiff_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const NodeId context = walk[static_cast<std::size_t>(j)];
          std::fill(accum.begin(), accum.end(), 0.0);
          sgd_target_update(u, output.row(context), 1.0, lr, accum);
          for (int k = 0; k < config.negatives; ++k) {
            const auto neg = static_cast<NodeId>(noise.sample(rng));
            if (neg == context) continue;
            sgd_target_update(u, output.row(neg), 0.0, lr, accum);
          }
          for (std::size_t x = 0; x < d; ++x) u[x] += accum[x];
        }
      }
    }
  }
  return input;
}

}  // namespace offer
