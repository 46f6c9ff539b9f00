#ifndef OFFER_SYNTHETIC_H_
#define OFFER_SYNTHETIC_H_

#include <cstdint>
#include <vector>

#include "offer/graph.h"

namespace offer {

struct PlantedPartitionConfig {
  int nodes = 600;
  int blocks = 2;
  // Mean number of neighbors inside / outside a node's own block.
  double intra_degree = 8.0;
  double inter_degree = 2.0;
  // Intra-block edges start as a ring lattice (rich in triangles); each is
  // rewired to a random same-block node with this probability.
  double intra_rewire = 0.1;
};

struct PlantedPartition {
  Graph graph;
  std::vector<int> block;
};

// Nodes are split into contiguous equal-size blocks. Inside each block,
// every node links to its intra_degree/2 nearest ring neighbors on each side
// (rounded down) and lattice edges are rewired Watts-Strogatz style. Then
// round(inter_degree * nodes / 2) distinct cross-block edges are added with
// uniformly random endpoints.
PlantedPartition planted_partition(const PlantedPartitionConfig& config, std::uint64_t seed);

}  // namespace offer

#endif  // OFFER_SYNTHETIC_H_
