#ifndef OFFER_CLUSTER_H_
#define OFFER_CLUSTER_H_

#include <cstdint>
#include <vector>

#include "offer/embedding.h"

namespace offer {

struct KMeansResult {
  std::vector<int> assignment;
  EmbeddingMatrix centroids;
  double inertia = 0.0;
  int iterations = 0;
};

// Lloyd's algorithm from a k-means++ seeding, Euclidean distance. Stops after
// 300 iterations or once no centroid moves by more than 1e-6. A cluster that
// empties is reseeded with the point farthest from its centroid.
KMeansResult kmeans_cluster(const EmbeddingMatrix& points, int k, std::uint64_t seed);

enum class SilhouetteDistance { kEuclidean, kCosine };

struct SilhouetteReport {
  std::vector<double> per_sample;
  double score = 0.0;
  std::vector<int> assignment;
};

// s(i) = (b(i) - a(i)) / max(a(i), b(i)) where a(i) is the mean distance to
// the rest of i's cluster and b(i) the smallest mean distance to another
// cluster; members of singleton clusters get s(i) = 0. Needs at least two
// non-empty clusters.
SilhouetteReport silhouette_score(const EmbeddingMatrix& points,
                                  const std::vector<int>& assignment,
                                  SilhouetteDistance distance = SilhouetteDistance::kEuclidean);

}  // namespace offer

#endif  // OFFER_CLUSTER_H_
