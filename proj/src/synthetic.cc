#include "offer/synthetic.h"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "offer/rng.h"

namespace offer {

namespace {

std::uint64_t pack(Edge e) {
  return (static_cast<std::uint64_t>(e.first) << 32) | e.second;
}

}  // namespace

PlantedPartition planted_partition(const PlantedPartitionConfig& config, std::uint64_t seed) {
  if (config.blocks < 2 || config.nodes < 2 * config.blocks) {
    throw std::invalid_argument("planted partition needs >= 2 blocks of >= 2 nodes");
  }
  if (config.intra_degree < 2.0 || config.inter_degree < 0.0 || config.intra_rewire < 0.0 ||
      config.intra_rewire > 1.0) {
    throw std::invalid_argument("bad planted partition parameters");
  }
  const auto n = static_cast<NodeId>(config.nodes);
  const auto blocks = static_cast<NodeId>(config.blocks);
  std::vector<int> block(n);
  std::vector<NodeId> block_start(blocks + 1);
  for (NodeId b = 0; b <= blocks; ++b) {
    block_start[b] = static_cast<NodeId>(static_cast<std::uint64_t>(b) * n / blocks);
  }
  for (NodeId b = 0; b < blocks; ++b) {
    for (NodeId v = block_start[b]; v < block_start[b + 1]; ++v) block[v] = static_cast<int>(b);
  }

  Rng rng(seed);
  std::unordered_set<std::uint64_t> present;
  std::vector<Edge> edges;
  auto add = [&](NodeId a, NodeId b) {
    if (a == b) return false;
    const Edge e = make_edge(a, b);
    if (!present.insert(pack(e)).second) return false;
    edges.push_back(e);
    return true;
  };

  const int half = static_cast<int>(config.intra_degree) / 2;
  for (NodeId b = 0; b < blocks; ++b) {
    const NodeId lo = block_start[b];
    const NodeId size = block_start[b + 1] - lo;
    for (NodeId i = 0; i < size; ++i) {
      for (int step = 1; step <= half; ++step) {
        const NodeId j = (i + static_cast<NodeId>(step)) % size;
        if (rng.uniform() < config.intra_rewire) {
          // Keep the source, pick a fresh same-block target; give up after a
          // few collisions and fall back to the lattice edge.
          bool placed = false;
          for (int attempt = 0; attempt < 8 && !placed; ++attempt) {
            placed = add(lo + i, lo + static_cast<NodeId>(rng.below(size)));
          }
          if (placed) continue;
        }
        add(lo + i, lo + j);
      }
    }
  }

  const auto inter_edges = static_cast<std::size_t>(
      std::llround(config.inter_degree * static_cast<double>(n) / 2.0));
  std::size_t added = 0;
  std::size_t guard = 0;
  while (added < inter_edges && guard++ < 100 * (inter_edges + 1)) {
    const auto a = static_cast<NodeId>(rng.below(n));
    const auto c = static_cast<NodeId>(rng.below(n));
    if (block[a] == block[c]) continue;
    if (add(a, c)) ++added;
  }
  return {Graph(n, edges), std::move(block)};
}

}  // namespace offer
