#include "offer/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace offer {

namespace {

struct Scored {
  double score;
  bool positive;
};

double ratio(std::size_t num, std::size_t den, const char* name,
             std::vector<std::string>& undefined) {
  if (den == 0) {
    undefined.emplace_back(name);
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

CosineScores cosine_score(const EmbeddingMatrix& emb, std::span<const Edge> pairs) {
  CosineScores out;
  out.scores.reserve(pairs.size());
  for (const Edge& e : pairs) {
    const auto a = emb.row(e.first);
    const auto b = emb.row(e.second);
    if (norm(a) == 0.0 || norm(b) == 0.0) ++out.zero_norm_pairs;
    out.scores.push_back(cosine_similarity(a, b));
  }
  return out;
}

double auc_score(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) {
    throw std::invalid_argument("AUC needs positive and negative scores");
  }
  std::vector<Scored> pooled;
  pooled.reserve(positive.size() + negative.size());
  for (double s : positive) pooled.push_back({s, true});
  for (double s : negative) pooled.push_back({s, false});
  std::sort(pooled.begin(), pooled.end(),
            [](const Scored& a, const Scored& b) { return a.score < b.score; });

  // Sum of (1-based, tie-averaged) ranks of the positives.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < pooled.size()) {
    std::size_t j = i;
    std::size_t pos_in_group = 0;
    while (j < pooled.size() && pooled[j].score == pooled[i].score) {
      pos_in_group += pooled[j].positive ? 1 : 0;
      ++j;
    }
    const double mean_rank = 0.5 * static_cast<double>(i + 1 + j);
    rank_sum += mean_rank * static_cast<double>(pos_in_group);
    i = j;
  }
  const double np = static_cast<double>(positive.size());
  const double nn = static_cast<double>(negative.size());
  return (rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

MetricsReport metrics_from_counts(const ConfusionCounts& c) {
  MetricsReport r;
  r.counts = c;
  r.accuracy = ratio(c.tp + c.tn, c.total(), "accuracy", r.undefined);
  r.precision = ratio(c.tp, c.tp + c.fp, "precision", r.undefined);
  r.recall = ratio(c.tp, c.tp + c.fn, "recall", r.undefined);
  r.specificity = ratio(c.tn, c.tn + c.fp, "specificity", r.undefined);
  if (r.precision + r.recall > 0.0) {
    // Equal to 2PR/(P+R), with a single rounding.
    r.f1 = static_cast<double>(2 * c.tp) / static_cast<double>(2 * c.tp + c.fp + c.fn);
  } else {
    r.undefined.emplace_back("f1");
  }
  return r;
}

MetricsReport compute_metrics(std::span<const double> positive,
                              std::span<const double> negative, const ThresholdRule& rule) {
  if (positive.empty() || negative.empty()) {
    throw std::invalid_argument("metrics need non-empty positive and negative scores");
  }
  ConfusionCounts counts;
  double threshold = 0.0;
  if (const auto* fixed = std::get_if<FixedThreshold>(&rule)) {
    threshold = fixed->value;
    for (double s : positive) (s >= threshold ? counts.tp : counts.fn)++;
    for (double s : negative) (s >= threshold ? counts.fp : counts.tn)++;
  } else {
    std::vector<Scored> pooled;
    for (double s : positive) pooled.push_back({s, true});
    for (double s : negative) pooled.push_back({s, false});
    // Descending; among tied scores negatives come first, so ties never
    // favor the positive class.
    std::stable_sort(pooled.begin(), pooled.end(), [](const Scored& a, const Scored& b) {
      if (a.score != b.score) return a.score > b.score;
      return !a.positive && b.positive;
    });
    const std::size_t n = pooled.size();
    const std::size_t predicted_positive = n / 2;
    for (std::size_t i = 0; i < n; ++i) {
      const bool predicted = i < predicted_positive;
      if (pooled[i].positive) {
        (predicted ? counts.tp : counts.fn)++;
      } else {
        (predicted ? counts.fp : counts.tn)++;
      }
    }
    threshold = n % 2 == 1 ? pooled[n / 2].score
                           : 0.5 * (pooled[n / 2 - 1].score + pooled[n / 2].score);
  }
  MetricsReport report = metrics_from_counts(counts);
  report.auc = auc_score(positive, negative);
  report.threshold = threshold;
  return report;
}

}  // namespace offer
