#ifndef OFFER_METRICS_H_
#define OFFER_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "offer/embedding.h"
#include "offer/graph.h"

namespace offer {

struct CosineScores {
  std::vector<double> scores;
  // Pairs with a zero-norm endpoint; they are scored 0.
  std::size_t zero_norm_pairs = 0;
};

double cosine_similarity(std::span<const double> a, std::span<const double> b);
CosineScores cosine_score(const EmbeddingMatrix& emb, std::span<const Edge> pairs);

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

struct MetricsReport {
  double auc = 0.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double specificity = 0.0;
  double f1 = 0.0;
  double threshold = 0.0;
  ConfusionCounts counts;
  // Ratios whose denominator was zero; they are reported as 0.
  std::vector<std::string> undefined;
};

// Predict positive for the top half of the pooled scores. On balanced test
// sets this makes predicted positives and negatives equal (within one).
struct MedianThreshold {};
// Predict positive when score >= value.
struct FixedThreshold {
  double value = 0.5;
};
using ThresholdRule = std::variant<MedianThreshold, FixedThreshold>;

// Mann-Whitney AUC; tied positive/negative pairs count 1/2.
double auc_score(std::span<const double> positive, std::span<const double> negative);

// Accuracy, precision, recall, specificity and F1 from confusion counts.
MetricsReport metrics_from_counts(const ConfusionCounts& counts);

// Throws std::invalid_argument on an empty score list.
MetricsReport compute_metrics(std::span<const double> positive,
                              std::span<const double> negative,
                              const ThresholdRule& rule = MedianThreshold{});

}  // namespace offer

#endif  // OFFER_METRICS_H_
