#include "offer/walks.h"

#include <numeric>
#include <stdexcept>

#include "offer/rng.h"

namespace offer {

namespace {

constexpr std::uint64_t kOrderStream = ~std::uint64_t{0};

std::vector<NodeId> pass_order(NodeId n, std::uint64_t seed, int pass) {
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  Rng rng(derive_seed(seed, kOrderStream, static_cast<std::uint64_t>(pass)));
  rng.shuffle(order);
  return order;
}

std::vector<AliasTable> build_alias_rows(const TransitionModel& transitions) {
  std::vector<AliasTable> rows(transitions.node_count());
  for (NodeId v = 0; v < transitions.node_count(); ++v) {
    if (!transitions.empty_row(v)) rows[v] = AliasTable(transitions.probabilities(v));
  }
  return rows;
}

// Unnormalized second-order weights into `out`; returns their sum.
double second_order_weights(const Graph& g, const TransitionModel& transitions,
                            double p, double q, NodeId previous, NodeId current,
                            std::vector<double>& out) {
  const auto candidates = g.neighbors(current);
  const auto mass = transitions.mass(current);
  const auto back = g.neighbors(previous);
  out.resize(candidates.size());
  double total = 0.0;
  std::size_t b = 0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const NodeId x = candidates[i];
    while (b < back.size() && back[b] < x) ++b;
    double alpha;
    if (x == previous) {
      alpha = 1.0 / p;
    } else if (b < back.size() && back[b] == x) {
      alpha = 1.0;
    } else {
      alpha = 1.0 / q;
    }
    out[i] = alpha * mass[i];
    total += out[i];
  }
  return total;
}

void check_model(const Graph& g, const TransitionModel& transitions) {
  if (transitions.node_count() != g.node_count()) {
    throw std::invalid_argument("transition model does not belong to this graph");
  }
}

}  // namespace

WalkCorpus generate_walks(const Graph& g, const TransitionModel& transitions,
                          const TrainConfig& config, std::uint64_t seed) {
  config.validate();
  check_model(g, transitions);
  const auto rows = build_alias_rows(transitions);
  WalkCorpus corpus(g.node_count(), config.walks_per_node, config.walk_length);
  std::vector<NodeId> walk;
  walk.reserve(static_cast<std::size_t>(config.walk_length));
  for (int pass = 0; pass < config.walks_per_node; ++pass) {
    for (NodeId start : pass_order(g.node_count(), seed, pass)) {
      Rng rng(derive_seed(seed, start, static_cast<std::uint64_t>(pass)));
      walk.assign(1, start);
      NodeId current = start;
      while (walk.size() < static_cast<std::size_t>(config.walk_length)) {
        if (rows[current].empty()) break;
        current = g.neighbors(current)[rows[current].sample(rng)];
        walk.push_back(current);
      }
      corpus.append(walk);
    }
  }
  return corpus;
}

std::vector<double> node2vec_step_distribution(const Graph& g,
                                               const TransitionModel& transitions,
                                               double p, double q, NodeId previous,
                                               NodeId current) {
  check_model(g, transitions);
  std::vector<double> weights;
  const double total =
      second_order_weights(g, transitions, p, q, previous, current, weights);
  if (total > 0.0) {
    for (double& w : weights) w /= total;
  }
  return weights;
}

WalkCorpus node2vec_walks(const Graph& g, const TransitionModel& transitions,
                          double p, double q, const TrainConfig& config,
                          std::uint64_t seed) {
  config.validate();
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("p and q must be positive");
  check_model(g, transitions);
  const auto rows = build_alias_rows(transitions);
  WalkCorpus corpus(g.node_count(), config.walks_per_node, config.walk_length);
  std::vector<NodeId> walk;
  std::vector<double> weights;
  walk.reserve(static_cast<std::size_t>(config.walk_length));
  for (int pass = 0; pass < config.walks_per_node; ++pass) {
    for (NodeId start : pass_order(g.node_count(), seed, pass)) {
      Rng rng(derive_seed(seed, start, static_cast<std::uint64_t>(pass)));
      walk.assign(1, start);
      if (!rows[start].empty() && config.walk_length > 1) {
        walk.push_back(g.neighbors(start)[rows[start].sample(rng)]);
      }
      while (walk.size() >= 2 && walk.size() < static_cast<std::size_t>(config.walk_length)) {
        const NodeId previous = walk[walk.size() - 2];
        const NodeId current = walk.back();
        const double total =
            second_order_weights(g, transitions, p, q, previous, current, weights);
        if (!(total > 0.0)) break;
        // Inverse-CDF draw; the last positive-weight slot absorbs rounding.
        const double target = rng.uniform() * total;
        double acc = 0.0;
        std::size_t pick = weights.size();
        for (std::size_t i = 0; i < weights.size(); ++i) {
          if (weights[i] <= 0.0) continue;
          pick = i;
          acc += weights[i];
          if (target < acc) break;
        }
        walk.push_back(g.neighbors(current)[pick]);
      }
      corpus.append(walk);
    }
  }
  return corpus;
}

}  // namespace offer
