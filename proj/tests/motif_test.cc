#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include "offer/motif.h"
#include "test_util.h"

namespace offer {
namespace {

using fixtures::complete_graph;

void expect_matches_oracle(const Graph& g) {
  const MotifStats stats = count_triangles(g);
  const auto oracle = fixtures::brute_force_triangles(g);
  ASSERT_EQ(stats.total_motifs, oracle.total);
  ASSERT_EQ(stats.node_degree, oracle.node);
  ASSERT_EQ(stats.edge_degree.size(), g.edge_count());
  for (EdgeId id = 0; id < g.edge_count(); ++id) {
    const Edge e = g.edges()[id];
    ASSERT_EQ(stats.edges[id], e);
    ASSERT_EQ(stats.edge_degree[id], oracle.edge.at({e.first, e.second}));
  }
}

TEST(CountTriangles, K3) {
  const MotifStats s = count_triangles(complete_graph(3));
  EXPECT_EQ(s.total_motifs, 1u);
  EXPECT_EQ(s.node_degree, (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(s.edge_degree, (std::vector<std::uint64_t>{1, 1, 1}));
}

TEST(CountTriangles, K4) {
  const MotifStats s = count_triangles(complete_graph(4));
  EXPECT_EQ(s.total_motifs, 4u);
  EXPECT_EQ(s.node_degree, std::vector<std::uint64_t>(4, 3));
  EXPECT_EQ(s.edge_degree, std::vector<std::uint64_t>(6, 2));
}

TEST(CountTriangles, PetersenIsTriangleFree) {
  const Graph g = fixtures::petersen_graph();
  ASSERT_EQ(g.edge_count(), 15u);
  const MotifStats s = count_triangles(g);
  EXPECT_EQ(s.total_motifs, 0u);
  EXPECT_EQ(s.node_degree, std::vector<std::uint64_t>(10, 0));
  EXPECT_EQ(s.edge_degree, std::vector<std::uint64_t>(15, 0));
  expect_matches_oracle(g);
}

TEST(CountTriangles, MatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 gen(2024);
  std::uniform_int_distribution<NodeId> size(3, 40);
  std::uniform_real_distribution<double> density(0.05, 0.6);
  for (int t = 0; t < 200; ++t) {
    expect_matches_oracle(fixtures::random_graph(size(gen), density(gen), gen));
  }
}

TEST(CountTriangles, HandshakeIdentitiesAndBounds) {
  std::mt19937_64 gen(99);
  for (int t = 0; t < 50; ++t) {
    const Graph g = fixtures::random_graph(30, 0.3, gen);
    const MotifStats s = count_triangles(g);
    const auto nd = std::accumulate(s.node_degree.begin(), s.node_degree.end(), std::uint64_t{0});
    const auto ed = std::accumulate(s.edge_degree.begin(), s.edge_degree.end(), std::uint64_t{0});
    EXPECT_EQ(nd, 3 * s.total_motifs);
    EXPECT_EQ(ed, 3 * s.total_motifs);
    for (EdgeId id = 0; id < g.edge_count(); ++id) {
      const Edge e = g.edges()[id];
      EXPECT_LE(s.edge_degree[id], std::min(s.node_degree[e.first], s.node_degree[e.second]));
      EXPECT_EQ(s.edge_degree_of(e.second, e.first), s.edge_degree[id]);
    }
  }
}

TEST(CountTriangles, AddingAnEdgeNeverLowersCounts) {
  std::mt19937_64 gen(5);
  for (int t = 0; t < 30; ++t) {
    const Graph g = fixtures::random_graph(20, 0.25, gen);
    std::vector<Edge> edges(g.edges().begin(), g.edges().end());
    std::uniform_int_distribution<NodeId> pick(0, 19);
    const NodeId a = pick(gen);
    const NodeId b = pick(gen);
    if (a == b || g.has_edge(a, b)) continue;
    edges.push_back(make_edge(a, b));
    const Graph h(20, edges);
    const MotifStats before = count_triangles(g);
    const MotifStats after = count_triangles(h);
    EXPECT_GE(after.total_motifs, before.total_motifs);
    for (NodeId v = 0; v < 20; ++v) EXPECT_GE(after.node_degree[v], before.node_degree[v]);
    for (const Edge& e : g.edges()) {
      EXPECT_GE(after.edge_degree_of(e.first, e.second), before.edge_degree_of(e.first, e.second));
    }
  }
}

TEST(MotifStats, EdgeDegreeOfNonEdgeIsZero) {
  const MotifStats s = count_triangles(fixtures::path_graph(3));
  EXPECT_EQ(s.edge_degree_of(0, 2), 0u);
  EXPECT_EQ(s.max_edge_degree(), 0u);
}

TEST(MotifAdjacency, K3AndK4Entries) {
  const Graph k3 = complete_graph(3);
  const auto w3 = build_motif_adjacency(k3, count_triangles(k3));
  for (double w : w3.edge_weights()) EXPECT_DOUBLE_EQ(w, 4.0 / 3.0);
  const Graph k4 = complete_graph(4);
  const auto w4 = build_motif_adjacency(k4, count_triangles(k4));
  for (double w : w4.edge_weights()) EXPECT_DOUBLE_EQ(w, 5.0 / 3.0);
}

TEST(MotifAdjacency, TriangleFreeEdgesKeepUnitWeight) {
  const Graph g = fixtures::path_graph(3);
  const auto w = build_motif_adjacency(g, count_triangles(g));
  EXPECT_DOUBLE_EQ(w.weight(g, 0, 1), 1.0);
  EXPECT_DOUBLE_EQ(w.weight(g, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(w.weight(g, 0, 2), 0.0);
}

TEST(MotifAdjacency, RejectsStatsFromAnotherGraph) {
  EXPECT_THROW(build_motif_adjacency(complete_graph(4), count_triangles(complete_graph(3))),
               std::invalid_argument);
}

TEST(MotifAdjacency, CooOutput) {
  const Graph g = fixtures::triangle_pendant();
  const auto w = build_motif_adjacency(g, count_triangles(g));
  std::ostringstream out;
  w.write_coo(g, out);
  std::istringstream in(out.str());
  std::string a, b;
  double weight;
  int lines = 0;
  while (in >> a >> b >> weight) {
    ++lines;
    EXPECT_DOUBLE_EQ(weight, (a == "3" || b == "3") ? 1.0 : 4.0 / 3.0);
  }
  EXPECT_EQ(lines, 4);
}

std::vector<double> row_by_label(const Graph& g, std::span<const double> row, NodeId v) {
  std::vector<double> out(g.node_count(), 0.0);
  const auto nbrs = g.neighbors(v);
  for (std::size_t i = 0; i < nbrs.size(); ++i) out[nbrs[i]] = row[i];
  return out;
}

TEST(TransitionModel, K4StrictRowsAreUniform) {
  const Graph g = complete_graph(4);
  const auto t = build_transition_model(g, count_triangles(g), TransitionMode::kStrictEq2);
  for (NodeId v = 0; v < 4; ++v) {
    for (double p : t.probabilities(v)) EXPECT_DOUBLE_EQ(p, 1.0 / 3.0);
    EXPECT_FALSE(t.fallback_row(v));
  }
}

TEST(TransitionModel, PathFallsBackToUniform) {
  const Graph g = fixtures::path_graph(3);
  const auto t = build_transition_model(g, count_triangles(g), TransitionMode::kStrictEq2);
  EXPECT_TRUE(t.fallback_row(1));
  EXPECT_EQ(std::vector<double>(t.probabilities(1).begin(), t.probabilities(1).end()),
            (std::vector<double>{0.5, 0.5}));
}

TEST(TransitionModel, TrianglePlusPendant) {
  const Graph g = fixtures::triangle_pendant();
  const MotifStats s = count_triangles(g);
  const NodeId c = 2;
  const auto strict = build_transition_model(g, s, TransitionMode::kStrictEq2);
  const auto strict_row = row_by_label(g, strict.probabilities(c), c);
  EXPECT_DOUBLE_EQ(strict_row[0], 0.5);
  EXPECT_DOUBLE_EQ(strict_row[1], 0.5);
  EXPECT_DOUBLE_EQ(strict_row[3], 0.0);
  const auto smooth = build_transition_model(g, s, TransitionMode::kSmoothedAm);
  const auto smooth_row = row_by_label(g, smooth.probabilities(c), c);
  EXPECT_NEAR(smooth_row[0], 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(smooth_row[1], 4.0 / 11.0, 1e-15);
  EXPECT_NEAR(smooth_row[3], 3.0 / 11.0, 1e-15);
  // The pendant itself has only a triangle-free edge and falls back.
  EXPECT_TRUE(strict.fallback_row(3));
  EXPECT_DOUBLE_EQ(strict.probabilities(3)[0], 1.0);
}

TEST(TransitionModel, IsolatedNodeHasEmptyRow) {
  const std::vector<Edge> edges = {{0, 1}};
  const Graph g(3, edges);
  const auto t = build_transition_model(g, count_triangles(g), TransitionMode::kStrictEq2);
  EXPECT_TRUE(t.empty_row(2));
  EXPECT_FALSE(t.empty_row(0));
}

// Independent recomputation from the dense triangle oracle.
TEST(TransitionModel, MatchesDirectFormulaOnRandomGraphs) {
  std::mt19937_64 gen(31337);
  for (int t = 0; t < 100; ++t) {
    const Graph g = fixtures::random_graph(25, 0.25, gen);
    const MotifStats s = count_triangles(g);
    const auto oracle = fixtures::brute_force_triangles(g);
    const auto am = build_motif_adjacency(g, s);
    const auto strict = build_transition_model(g, s, TransitionMode::kStrictEq2);
    const auto smooth = build_transition_model(g, s, TransitionMode::kSmoothedAm);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto nbrs = g.neighbors(v);
      if (nbrs.empty()) continue;
      double ed_sum = 0.0, am_sum = 0.0;
      for (NodeId u : nbrs) {
        const auto ed = oracle.edge.at({std::min(u, v), std::max(u, v)});
        ed_sum += static_cast<double>(ed);
        am_sum += fixtures::direct_am_entry(true, ed, 3);
      }
      double strict_total = 0.0, smooth_total = 0.0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        const auto ed = oracle.edge.at({std::min(nbrs[i], v), std::max(nbrs[i], v)});
        const double a = fixtures::direct_am_entry(true, ed, 3);
        EXPECT_NEAR(am.row(v)[i], a, 1e-12);
        const double expected_strict =
            ed_sum > 0 ? static_cast<double>(ed) / ed_sum : 1.0 / static_cast<double>(nbrs.size());
        EXPECT_NEAR(strict.probabilities(v)[i], expected_strict, 1e-12);
        EXPECT_NEAR(smooth.probabilities(v)[i], a / am_sum, 1e-12);
        strict_total += strict.probabilities(v)[i];
        smooth_total += smooth.probabilities(v)[i];
      }
      EXPECT_NEAR(strict_total, 1.0, 1e-12);
      EXPECT_NEAR(smooth_total, 1.0, 1e-12);
    }
  }
}

TEST(TransitionMode, ParseNames) {
  EXPECT_EQ(parse_transition_mode("strict-eq2"), TransitionMode::kStrictEq2);
  EXPECT_EQ(parse_transition_mode("smoothed-am"), TransitionMode::kSmoothedAm);
  EXPECT_EQ(parse_transition_mode("uniform"), TransitionMode::kUniform);
  EXPECT_THROW(parse_transition_mode("bogus"), std::invalid_argument);
  for (auto m : {TransitionMode::kUniform, TransitionMode::kStrictEq2, TransitionMode::kSmoothedAm}) {
    EXPECT_EQ(parse_transition_mode(to_string(m)), m);
  }
}

TEST(MotifOutput, CsvHasOneRowPerNodeAndEdge) {
  const Graph g = complete_graph(3);
  std::ostringstream out;
  write_motif_csv(g, count_triangles(g), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "kind,i,j,label_i,label_j,degree");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 6);
}

}  // namespace
}  // namespace offer
