#include "offer/line.h"

#include <cmath>
#include <stdexcept>

#include "offer/rng.h"
#include "sgd_internal.h"

namespace offer {

namespace {

// Trains one proximity order into a fresh |V| x dim matrix.
EmbeddingMatrix train_order(const Graph& g, const WeightedAdjacency& weights,
                            const TrainConfig& config, std::size_t dim,
                            bool second_order, std::uint64_t seed) {
  const std::size_t n = g.node_count();
  const auto edges = g.edges();
  const AliasTable edge_sampler(weights.edge_weights());

  std::vector<double> noise_weights(n);
  for (NodeId v = 0; v < n; ++v) noise_weights[v] = std::pow(weights.weighted_degree(v), 0.75);
  const AliasTable noise(noise_weights);

  Rng rng(seed);
  EmbeddingMatrix vertex(n, dim);
  init_uniform(vertex, rng);
  EmbeddingMatrix context(second_order ? n : 0, dim);
  EmbeddingMatrix& targets = second_order ? context : vertex;

  const double total = static_cast<double>(config.line_samples_per_edge) *
                       static_cast<double>(edges.size());
  std::vector<double> accum(dim);
  for (double t = 0.0; t < total; t += 1.0) {
    const double lr = decayed_rate(config.learning_rate, t, total);
    const Edge e = edges[edge_sampler.sample(rng)];
    const bool flip = rng.below(2) == 1;
    const NodeId source = flip ? e.second : e.first;
    const NodeId target = flip ? e.first : e.second;

    std::fill(accum.begin(), accum.end(), 0.0);
    const auto u = vertex.row(source);
    sgd_target_update(u, targets.row(target), 1.0, lr, accum);
    for (int k = 0; k < config.negatives; ++k) {
      const auto neg = static_cast<NodeId>(noise.sample(rng));
      if (neg == target || neg == source) continue;
      sgd_target_update(u, targets.row(neg), 0.0, lr, accum);
    }
    for (std::size_t x = 0; x < dim; ++x) u[x] += accum[x];
  }
  return vertex;
}

void normalize_rows(EmbeddingMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    const double len = norm(row);
    if (len > 0.0) {
      for (double& x : row) x /= len;
    }
  }
}

}  // namespace

EmbeddingMatrix train_line(const Graph& g, const WeightedAdjacency& weights,
                           const TrainConfig& config, std::uint64_t seed) {
  config.validate();
  if (g.edge_count() == 0) throw std::invalid_argument("LINE needs at least one edge");
  if (weights.node_count() != g.node_count() ||
      weights.edge_weights().size() != g.edge_count()) {
    throw std::invalid_argument("edge weights do not belong to this graph");
  }
  const auto d = static_cast<std::size_t>(config.dim);
  switch (config.line_order) {
    case LineOrder::kFirst:
      return train_order(g, weights, config, d, false, derive_seed(seed, 1));
    case LineOrder::kSecond:
      return train_order(g, weights, config, d, true, derive_seed(seed, 2));
    case LineOrder::kConcat:
      break;
  }
  if (d < 2) throw std::invalid_argument("concatenated LINE needs dim >= 2");
  const std::size_t d1 = (d + 1) / 2;
  EmbeddingMatrix first = train_order(g, weights, config, d1, false, derive_seed(seed, 1));
  EmbeddingMatrix second =
      train_order(g, weights, config, d - d1, true, derive_seed(seed, 2));
  normalize_rows(first);
  normalize_rows(second);
  EmbeddingMatrix out(g.node_count(), d);
  for (std::size_t i = 0; i < out.rows(); ++i) {
    const auto row = out.row(i);
    std::copy(first.row(i).begin(), first.row(i).end(), row.begin());
    std::copy(second.row(i).begin(), second.row(i).end(), row.begin() + d1);
  }
  return out;
}

EmbeddingMatrix train_line(const Graph& g, const TrainConfig& config, std::uint64_t seed) {
  return train_line(g, WeightedAdjacency::unit(g), config, seed);
}

}  // namespace offer
