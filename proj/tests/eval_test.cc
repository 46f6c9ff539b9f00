#include <gtest/gtest.h>

#include <cmath>
#include <queue>
#include <set>

#include "offer/cluster.h"
#include "offer/metrics.h"
#include "offer/motif.h"
#include "offer/sgns.h"
#include "offer/split.h"
#include "offer/walks.h"
#include "test_util.h"

namespace offer {
namespace {

// 4-cycle 0-1-2-3 with chord 0-2 and pendant 2-4: six edges, four non-edges.
Graph chorded_cycle_with_pendant() {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}, {2, 4}};
  return Graph(5, edges);
}

bool bfs_connected(const Graph& g, NodeId s, NodeId t) {
  std::vector<char> seen(g.node_count(), 0);
  std::queue<NodeId> q;
  q.push(s);
  seen[s] = 1;
  while (!q.empty()) {
    const NodeId v = q.front();
    q.pop();
    if (v == t) return true;
    for (NodeId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        q.push(w);
      }
    }
  }
  return false;
}

void expect_valid_split(const Graph& g, const LinkPredSplit& split, double fraction, bool protect) {
  const auto target = static_cast<std::size_t>(std::floor(fraction * g.edge_count()));
  ASSERT_EQ(split.positive_test.size(), target);
  ASSERT_EQ(split.negative_test.size(), target);
  EXPECT_EQ(split.train_graph.node_count(), g.node_count());
  EXPECT_EQ(split.train_graph.edge_count(), g.edge_count() - target);
  std::set<Edge> negatives;
  for (const Edge& e : split.positive_test) {
    EXPECT_TRUE(g.has_edge(e.first, e.second));
    EXPECT_FALSE(split.train_graph.has_edge(e.first, e.second));
    if (protect) {
      EXPECT_TRUE(bfs_connected(split.train_graph, e.first, e.second));
    }
  }
  for (const Edge& e : split.negative_test) {
    EXPECT_LT(e.first, e.second);
    EXPECT_FALSE(g.has_edge(e.first, e.second));
    EXPECT_TRUE(negatives.insert(e).second) << "duplicate negative";
  }
  for (const Edge& e : split.train_graph.edges()) EXPECT_TRUE(g.has_edge(e.first, e.second));
}

TEST(MakeSplit, SixEdgeGraphHoldsOutOnePair) {
  const Graph g = chorded_cycle_with_pendant();
  const auto split = make_split(g, 1.0 / 6.0, 3);
  expect_valid_split(g, split, 1.0 / 6.0, true);
  // The pendant edge is a bridge and must never be held out.
  EXPECT_NE(split.positive_test[0], (Edge{2, 4}));
}

TEST(MakeSplit, CompleteGraphHasNoNegatives) {
  EXPECT_THROW(make_split(fixtures::complete_graph(4), 1.0 / 6.0, 1), std::invalid_argument);
}

TEST(MakeSplit, RandomGraphsProtectedAndUnprotected) {
  std::mt19937_64 gen(44);
  for (int t = 0; t < 20; ++t) {
    const Graph g = fixtures::random_graph(40, 0.2, gen);
    expect_valid_split(g, make_split(g, 0.1, t, true), 0.1, true);
    expect_valid_split(g, make_split(g, 0.3, t, false), 0.3, false);
  }
}

TEST(MakeSplit, Deterministic) {
  std::mt19937_64 gen(1);
  const Graph g = fixtures::random_graph(40, 0.2, gen);
  const auto a = make_split(g, 0.1, 9);
  const auto b = make_split(g, 0.1, 9);
  EXPECT_EQ(a.train_graph, b.train_graph);
  EXPECT_EQ(a.positive_test, b.positive_test);
  EXPECT_EQ(a.negative_test, b.negative_test);
}

TEST(MakeSplit, Errors) {
  const Graph g = chorded_cycle_with_pendant();
  EXPECT_THROW(make_split(g, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(make_split(g, 1.0, 1), std::invalid_argument);
  EXPECT_THROW(make_split(g, 0.1, 1), std::invalid_argument);  // floor(0.6) = 0
  // A tree has no removable edge under protection.
  EXPECT_THROW(make_split(fixtures::path_graph(12), 0.2, 1), std::invalid_argument);
}

TEST(MakeSplit, WikiTrainEdgeCount) {
  const auto path = fixtures::find_dataset("wiki");
  if (!path) GTEST_SKIP() << "wiki not found under " << fixtures::data_dir();
  const Graph g = load_edge_list(path->string());
  const auto split = make_split(g, 0.1, 1);
  EXPECT_EQ(split.train_graph.edge_count(), 2623u);
  for (const Edge& e : split.positive_test) {
    EXPECT_TRUE(bfs_connected(split.train_graph, e.first, e.second));
  }
}

TEST(Cosine, Examples) {
  const std::vector<double> a = {1, 2, 3}, x = {1, 0}, y = {0, 1}, d = {1, 1};
  EXPECT_NEAR(cosine_similarity(a, a), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(cosine_similarity(x, y), 0.0);
  EXPECT_NEAR(cosine_similarity(d, x), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(cosine_similarity(d, x), 0.70711, 1e-5);
}

TEST(Cosine, ZeroNormPairsScoreZero) {
  EmbeddingMatrix emb(3, 2);
  emb.row(0)[0] = 1.0;
  emb.row(1)[1] = 2.0;
  const std::vector<Edge> pairs = {{0, 1}, {0, 2}};
  const auto scores = cosine_score(emb, pairs);
  EXPECT_EQ(scores.zero_norm_pairs, 1u);
  EXPECT_DOUBLE_EQ(scores.scores[1], 0.0);
}

// O(|P| |N|) Mann-Whitney count.
double brute_auc(const std::vector<double>& pos, const std::vector<double>& neg) {
  double wins = 0.0;
  for (double p : pos) {
    for (double n : neg) wins += p > n ? 1.0 : p == n ? 0.5 : 0.0;
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

TEST(Auc, Examples) {
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.9, 0.8}, std::vector<double>{0.7, 0.1}), 1.0);
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.5}, std::vector<double>{0.5}), 0.5);
  EXPECT_DOUBLE_EQ(auc_score(std::vector<double>{0.1}, std::vector<double>{0.5}), 0.0);
}

TEST(Auc, MatchesBruteForceAndIsMonotoneInvariant) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> size(1, 60), level(0, 9);
  for (int t = 0; t < 100; ++t) {
    std::vector<double> pos(size(gen)), neg(size(gen));
    // Coarse levels force plenty of ties.
    for (double& s : pos) s = level(gen) / 10.0 + 0.05;
    for (double& s : neg) s = level(gen) / 10.0;
    const double auc = auc_score(pos, neg);
    EXPECT_NEAR(auc, brute_auc(pos, neg), 1e-12);
    std::vector<double> pos2 = pos, neg2 = neg;
    for (double& s : pos2) s = std::exp(3.0 * s) + s * s * s;
    for (double& s : neg2) s = std::exp(3.0 * s) + s * s * s;
    EXPECT_NEAR(auc_score(pos2, neg2), auc, 1e-12);
  }
}

TEST(Metrics, ConfusionArithmetic) {
  const auto m = metrics_from_counts({3, 1, 4, 2});
  EXPECT_DOUBLE_EQ(m.precision, 0.75);
  EXPECT_DOUBLE_EQ(m.recall, 0.6);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.7);
  EXPECT_DOUBLE_EQ(m.specificity, 0.8);
  EXPECT_DOUBLE_EQ(m.f1, 2.0 / 3.0);
  EXPECT_TRUE(m.undefined.empty());
}

TEST(Metrics, ZeroDenominatorsAreReported) {
  const auto m = metrics_from_counts({0, 0, 5, 5});
  EXPECT_DOUBLE_EQ(m.precision, 0.0);
  EXPECT_FALSE(m.undefined.empty());
}

TEST(Metrics, MedianRuleBalancesPredictions) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = 1 + t;
    std::vector<double> pos(n), neg(n);
    for (double& s : pos) s = u(gen) + 0.2;
    for (double& s : neg) s = u(gen);
    const auto m = compute_metrics(pos, neg);
    EXPECT_EQ(m.counts.tp + m.counts.fp, n);
    EXPECT_EQ(m.counts.tn + m.counts.fn, n);
    EXPECT_EQ(m.counts.total(), 2 * n);
    if (m.precision + m.recall > 0) {
      EXPECT_NEAR(m.f1, 2 * m.precision * m.recall / (m.precision + m.recall), 1e-12);
    }
    EXPECT_NEAR(m.auc, brute_auc(pos, neg), 1e-12);
  }
}

TEST(Metrics, FixedThreshold) {
  const std::vector<double> pos = {0.9, 0.6, 0.4}, neg = {0.7, 0.2, 0.1};
  const auto m = compute_metrics(pos, neg, FixedThreshold{0.5});
  EXPECT_EQ(m.counts.tp, 2u);
  EXPECT_EQ(m.counts.fn, 1u);
  EXPECT_EQ(m.counts.fp, 1u);
  EXPECT_EQ(m.counts.tn, 2u);
}

TEST(Metrics, EmptyInputThrows) {
  EXPECT_THROW(compute_metrics({}, std::vector<double>{0.1}), std::invalid_argument);
}

EmbeddingMatrix points_from(const std::vector<std::vector<double>>& rows) {
  EmbeddingMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
  }
  return m;
}

TEST(KMeans, SeparatesIdenticalPointGroups) {
  const auto pts = points_from({{0, 0}, {0, 0}, {0, 0}, {10, 10}, {10, 10}, {10, 10}});
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto r = kmeans_cluster(pts, 2, seed);
    EXPECT_EQ(r.assignment[0], r.assignment[1]);
    EXPECT_EQ(r.assignment[0], r.assignment[2]);
    EXPECT_EQ(r.assignment[3], r.assignment[4]);
    EXPECT_NE(r.assignment[0], r.assignment[3]);
    EXPECT_DOUBLE_EQ(r.inertia, 0.0);
  }
}

TEST(KMeans, OneClusterPerPoint) {
  const auto pts = points_from({{0, 0}, {1, 0}, {0, 3}, {5, 5}, {2, 7}});
  const auto r = kmeans_cluster(pts, 5, 1);
  EXPECT_EQ(std::set<int>(r.assignment.begin(), r.assignment.end()).size(), 5u);
  EXPECT_DOUBLE_EQ(r.inertia, 0.0);
}

TEST(KMeans, Errors) {
  const auto pts = points_from({{0, 0}, {1, 1}});
  EXPECT_THROW(kmeans_cluster(pts, 0, 1), std::invalid_argument);
  EXPECT_THROW(kmeans_cluster(pts, 3, 1), std::invalid_argument);
}

TEST(KMeans, RecoversCliquesFromEmbedding) {
  const Graph g = fixtures::two_cliques(false);
  TrainConfig config;
  config.dim = 8;
  config.walks_per_node = 20;
  config.walk_length = 20;
  config.window = 3;
  config.epochs = 3;
  int agree = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto emb = train_sgns(generate_walks(g, TransitionModel::uniform(g), config, seed),
                                config, seed);
    const auto r = kmeans_cluster(emb, 2, seed);
    bool ok = true;
    for (NodeId v = 0; v < 8; ++v) ok &= (r.assignment[v] == r.assignment[0]) == (v < 4);
    agree += ok;
  }
  EXPECT_GE(agree, 9);
}

// Straight from the definition, O(n^2) per call.
double brute_silhouette(const EmbeddingMatrix& pts, const std::vector<int>& label, bool cosine) {
  const std::size_t n = pts.rows();
  auto dist = [&](std::size_t i, std::size_t j) {
    if (cosine) {
      double d = 0, a = 0, b = 0;
      for (std::size_t x = 0; x < pts.dim(); ++x) {
        d += pts.row(i)[x] * pts.row(j)[x];
        a += pts.row(i)[x] * pts.row(i)[x];
        b += pts.row(j)[x] * pts.row(j)[x];
      }
      return 1.0 - d / std::sqrt(a * b);
    }
    double s = 0;
    for (std::size_t x = 0; x < pts.dim(); ++x) {
      s += (pts.row(i)[x] - pts.row(j)[x]) * (pts.row(i)[x] - pts.row(j)[x]);
    }
    return std::sqrt(s);
  };
  const int k = *std::max_element(label.begin(), label.end()) + 1;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> sum(k, 0.0);
    std::vector<int> count(k, 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum[label[j]] += dist(i, j);
      count[label[j]]++;
    }
    if (count[label[i]] == 0) continue;  // singleton: s = 0
    const double a = sum[label[i]] / count[label[i]];
    double b = INFINITY;
    for (int c = 0; c < k; ++c) {
      if (c != label[i] && count[c] > 0) b = std::min(b, sum[c] / count[c]);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(n);
}

TEST(Silhouette, LineExample) {
  const auto pts = points_from({{0}, {1}, {9}, {10}});
  const auto r = silhouette_score(pts, {0, 0, 1, 1});
  const double expected = (8.5 / 9.5 + 7.5 / 8.5 + 7.5 / 8.5 + 8.5 / 9.5) / 4;
  EXPECT_NEAR(r.score, expected, 1e-12);
  EXPECT_NEAR(r.score, 0.8886, 1e-4);
  EXPECT_NEAR(r.per_sample[0], 8.5 / 9.5, 1e-12);
  EXPECT_NEAR(r.per_sample[1], 7.5 / 8.5, 1e-12);
}

TEST(Silhouette, TightClustersScoreNearOne) {
  const auto pts = points_from({{0, 0}, {0.01, 0}, {0, 0.01}, {10, 0}, {10.01, 0}, {10, 0.01}});
  EXPECT_GE(silhouette_score(pts, {0, 0, 0, 1, 1, 1}).score, 0.99);
}

TEST(Silhouette, MatchesBruteForce) {
  std::mt19937_64 gen(77);
  std::uniform_int_distribution<int> size(4, 40), dim(1, 5), clusters(2, 4);
  std::normal_distribution<double> value(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const int n = size(gen), k = clusters(gen);
    EmbeddingMatrix pts(n, dim(gen));
    for (double& x : pts.data()) x = value(gen);
    std::vector<int> label(n);
    for (int i = 0; i < n; ++i) label[i] = i < k ? i : static_cast<int>(gen() % k);
    for (bool cosine : {false, true}) {
      const auto r = silhouette_score(
          pts, label, cosine ? SilhouetteDistance::kCosine : SilhouetteDistance::kEuclidean);
      EXPECT_NEAR(r.score, brute_silhouette(pts, label, cosine), 1e-9);
    }
  }
}

TEST(Silhouette, RandomPointsScoreNearZero) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0, 1);
  double mean = 0.0;
  for (int t = 0; t < 10; ++t) {
    EmbeddingMatrix pts(100, 2);
    for (double& x : pts.data()) x = u(gen);
    std::vector<int> label(100);
    for (int i = 0; i < 100; ++i) label[i] = i % 2;
    std::shuffle(label.begin(), label.end(), gen);
    mean += silhouette_score(pts, label).score / 10;
  }
  EXPECT_LT(std::abs(mean), 0.1);
}

TEST(Silhouette, NeedsTwoClusters) {
  const auto pts = points_from({{0}, {1}, {2}});
  EXPECT_THROW(silhouette_score(pts, {0, 0, 0}), std::invalid_argument);
}

}  // namespace
}  // namespace offer
