#include "offer/cluster.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#include "offer/metrics.h"
#include "offer/rng.h"

namespace offer {

namespace {

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

std::size_t nearest(const EmbeddingMatrix& centroids, std::span<const double> x,
                    double* best_distance) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.rows(); ++c) {
    const double dist = squared_distance(centroids.row(c), x);
    if (dist < best_d) {
      best_d = dist;
      best = c;
    }
  }
  if (best_distance) *best_distance = best_d;
  return best;
}

}  // namespace

KMeansResult kmeans_cluster(const EmbeddingMatrix& points, int k, std::uint64_t seed) {
  const std::size_t n = points.rows();
  const std::size_t d = points.dim();
  if (k < 1) throw std::invalid_argument("k must be positive");
  if (static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("k = " + std::to_string(k) + " exceeds the " +
                                std::to_string(n) + " points");
  }
  const auto kk = static_cast<std::size_t>(k);
  Rng rng(seed);

  // k-means++ seeding.
  KMeansResult result;
  result.centroids = EmbeddingMatrix(kk, d);
  std::vector<char> taken(n, 0);
  std::vector<double> closest(n, std::numeric_limits<double>::infinity());
  std::size_t pick = rng.below(n);
  for (std::size_t c = 0; c < kk; ++c) {
    taken[pick] = 1;
    std::copy(points.row(pick).begin(), points.row(pick).end(), result.centroids.row(c).begin());
    if (c + 1 == kk) break;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], squared_distance(points.row(i), result.centroids.row(c)));
      if (!taken[i]) total += closest[i];
    }
    if (total > 0.0) {
      const double target = rng.uniform() * total;
      double acc = 0.0;
      pick = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (taken[i] || closest[i] <= 0.0) continue;
        pick = i;
        acc += closest[i];
        if (target < acc) break;
      }
    } else {
      // Every remaining point coincides with a centroid; take the first one.
      pick = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), 0) - taken.begin());
    }
  }

  result.assignment.assign(n, 0);
  EmbeddingMatrix next(kk, d);
  std::vector<std::size_t> sizes(kk);
  for (result.iterations = 1; result.iterations <= 300; ++result.iterations) {
    for (std::size_t i = 0; i < n; ++i) {
      result.assignment[i] = static_cast<int>(nearest(result.centroids, points.row(i), nullptr));
    }
    std::fill(next.data().begin(), next.data().end(), 0.0);
    std::fill(sizes.begin(), sizes.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto c = static_cast<std::size_t>(result.assignment[i]);
      ++sizes[c];
      const auto row = next.row(c);
      const auto x = points.row(i);
      for (std::size_t t = 0; t < d; ++t) row[t] += x[t];
    }
    for (std::size_t c = 0; c < kk; ++c) {
      if (sizes[c] == 0) {
        // Reseed from the point worst served by its current centroid.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double dist = squared_distance(
              points.row(i), result.centroids.row(static_cast<std::size_t>(result.assignment[i])));
          if (dist > far_d) {
            far_d = dist;
            far = i;
          }
        }
        std::copy(points.row(far).begin(), points.row(far).end(), next.row(c).begin());
        continue;
      }
      for (double& x : next.row(c)) x /= static_cast<double>(sizes[c]);
    }
    double shift = 0.0;
    for (std::size_t c = 0; c < kk; ++c) {
      shift = std::max(shift, std::sqrt(squared_distance(next.row(c), result.centroids.row(c))));
    }
    std::swap(next, result.centroids);
    if (shift < 1e-6) break;
  }
  result.iterations = std::min(result.iterations, 300);

  result.inertia = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double dist = 0.0;
    result.assignment[i] = static_cast<int>(nearest(result.centroids, points.row(i), &dist));
    result.inertia += dist;
  }
  return result;
}

SilhouetteReport silhouette_score(const EmbeddingMatrix& points,
                                  const std::vector<int>& assignment,
                                  SilhouetteDistance distance) {
  const std::size_t n = points.rows();
  if (assignment.size() != n) throw std::invalid_argument("one label per point required");

  // Dense cluster indices in order of label value.
  std::map<int, std::size_t> index;
  for (int label : assignment) index.emplace(label, 0);
  if (index.size() < 2) throw std::invalid_argument("silhouette needs at least two clusters");
  std::size_t next = 0;
  for (auto& [label, id] : index) id = next++;
  const std::size_t k = index.size();

  std::vector<std::size_t> cluster(n);
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) {
    cluster[i] = index.at(assignment[i]);
    ++sizes[cluster[i]];
  }

  auto dist = [&](std::size_t i, std::size_t j) {
    if (distance == SilhouetteDistance::kCosine) {
      return 1.0 - cosine_similarity(points.row(i), points.row(j));
    }
    return std::sqrt(squared_distance(points.row(i), points.row(j)));
  };

  SilhouetteReport report;
  report.assignment = assignment;
  report.per_sample.assign(n, 0.0);
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t own = cluster[i];
    if (sizes[own] == 1) continue;
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sums[cluster[j]] += dist(i, j);
    }
    const double a = sums[own] / static_cast<double>(sizes[own] - 1);
    double b = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < k; ++c) {
      if (c != own) b = std::min(b, sums[c] / static_cast<double>(sizes[c]));
    }
    const double denom = std::max(a, b);
    report.per_sample[i] = denom > 0.0 ? (b - a) / denom : 0.0;
  }
  double total = 0.0;
  for (double s : report.per_sample) total += s;
  report.score = n > 0 ? total / static_cast<double>(n) : 0.0;
  return report;
}

}  // namespace offer
