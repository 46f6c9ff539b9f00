#include "offer/split.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "offer/rng.h"

namespace offer {

namespace {

std::uint64_t pack(Edge e) {
  return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

// Adjacency that supports edge removal and s-t reachability queries.
class ResidualGraph {
 public:
  explicit ResidualGraph(const Graph& g) : adj_(g.node_count()), stamp_(g.node_count(), 0) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      adj_[v].assign(g.neighbors(v).begin(), g.neighbors(v).end());
    }
  }

  void remove(Edge e) {
    erase(adj_[e.first], e.second);
    erase(adj_[e.second], e.first);
  }
  void restore(Edge e) {
    insert(adj_[e.first], e.second);
    insert(adj_[e.second], e.first);
  }

  bool connected(NodeId s, NodeId t) {
    ++epoch_;
    queue_.assign(1, s);
    stamp_[s] = epoch_;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      for (NodeId w : adj_[queue_[head]]) {
        if (w == t) return true;
        if (stamp_[w] != epoch_) {
          stamp_[w] = epoch_;
          queue_.push_back(w);
        }
      }
    }
    return false;
  }

 private:
  static void erase(std::vector<NodeId>& list, NodeId x) {
    list.erase(std::lower_bound(list.begin(), list.end(), x));
  }
  static void insert(std::vector<NodeId>& list, NodeId x) {
    list.insert(std::lower_bound(list.begin(), list.end(), x), x);
  }

  std::vector<std::vector<NodeId>> adj_;
  std::vector<std::uint64_t> stamp_;
  std::uint64_t epoch_ = 0;
  std::vector<NodeId> queue_;
};

std::vector<Edge> sample_non_edges(const Graph& g, std::size_t count, Rng& rng) {
  const std::uint64_t n = g.node_count();
  const std::uint64_t pairs = n * (n - 1) / 2;
  const std::uint64_t free_pairs = pairs - g.edge_count();
  if (free_pairs < count) {
    throw std::invalid_argument("graph has only " + std::to_string(free_pairs) +
                                " non-edges, need " + std::to_string(count));
  }
  std::vector<Edge> out;
  out.reserve(count);
  if (free_pairs <= 4 * static_cast<std::uint64_t>(count) || 4 * g.edge_count() > pairs) {
    // Dense regime: enumerate and shuffle.
    std::vector<Edge> all;
    for (NodeId a = 0; a < n; ++a) {
      for (NodeId b = a + 1; b < n; ++b) {
        if (!g.has_edge(a, b)) all.push_back({a, b});
      }
    }
    rng.shuffle(all);
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
  }
  std::unordered_set<std::uint64_t> chosen;
  while (out.size() < count) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto b = static_cast<NodeId>(rng.below(n));
    if (a == b || g.has_edge(a, b)) continue;
    const Edge e = make_edge(a, b);
    if (chosen.insert(pack(e)).second) out.push_back(e);
  }
  return out;
}

}  // namespace

LinkPredSplit make_split(const Graph& g, double holdout_fraction, std::uint64_t seed,
                         bool protect_connectivity) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw std::invalid_argument("holdout fraction must lie in (0, 1)");
  }
  const auto target = static_cast<std::size_t>(
      std::floor(holdout_fraction * static_cast<double>(g.edge_count())));
  if (target < 1) throw std::invalid_argument("graph too small: no edge would be held out");

  Rng rng(seed);
  std::vector<EdgeId> order(g.edge_count());
  std::iota(order.begin(), order.end(), EdgeId{0});
  rng.shuffle(order);

  std::vector<char> held(g.edge_count(), 0);
  std::vector<Edge> positives;
  ResidualGraph residual(g);
  for (EdgeId id : order) {
    if (positives.size() == target) break;
    const Edge e = g.edges()[id];
    if (protect_connectivity) {
      residual.remove(e);
      if (!residual.connected(e.first, e.second)) {
        residual.restore(e);
        continue;
      }
    }
    held[id] = 1;
    positives.push_back(e);
  }
  if (positives.size() < target) {
    throw std::invalid_argument("only " + std::to_string(positives.size()) +
                                " edges can be held out without disconnecting, need " +
                                std::to_string(target));
  }

  std::vector<Edge> kept;
  kept.reserve(g.edge_count() - target);
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    if (!held[id]) kept.push_back(g.edges()[id]);
  }

  LinkPredSplit split{Graph(g.node_count(), kept, g.labels()), std::move(positives), {},
                      holdout_fraction, seed};
  split.negative_test = sample_non_edges(g, split.positive_test.size(), rng);
  return split;
}

}  // namespace offer
