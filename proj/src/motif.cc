#include "offer/motif.h"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace offer {

std::uint64_t MotifStats::edge_degree_of(NodeId a, NodeId b) const {
  const Edge key = make_edge(a, b);
  const auto it = std::lower_bound(edges.begin(), edges.end(), key);
  if (it == edges.end() || *it != key) return 0;
  return edge_degree[static_cast<std::size_t>(it - edges.begin())];
}

std::uint64_t MotifStats::max_edge_degree() const {
  return edge_degree.empty()
             ? 0
             : *std::max_element(edge_degree.begin(), edge_degree.end());
}

bool MotifStats::matches(const Graph& g) const {
  return node_degree.size() == g.node_count() &&
         edge_degree.size() == g.edge_count() &&
         std::equal(edges.begin(), edges.end(), g.edges().begin(), g.edges().end());
}

MotifStats count_triangles(const Graph& g) {
  MotifStats stats;
  stats.motif = MotifSpec::triangle();
  stats.node_degree.assign(g.node_count(), 0);
  stats.edges.assign(g.edges().begin(), g.edges().end());
  stats.edge_degree.assign(g.edge_count(), 0);

  for (NodeId u = 0; u < g.node_count(); ++u) {
    const auto nu = g.neighbors(u);
    const auto eu = g.incident_edges(u);
    // Only higher neighbors of u take part, so start past the lower ones.
    const std::size_t u_start = static_cast<std::size_t>(
        std::upper_bound(nu.begin(), nu.end(), u) - nu.begin());
    for (std::size_t a = u_start; a < nu.size(); ++a) {
      const NodeId v = nu[a];
      const auto nv = g.neighbors(v);
      const auto ev = g.incident_edges(v);
      // Merge u's neighbors above v with v's neighbors above v.
      std::size_t x = a + 1;
      std::size_t y = static_cast<std::size_t>(
          std::upper_bound(nv.begin(), nv.end(), v) - nv.begin());
      while (x < nu.size() && y < nv.size()) {
        if (nu[x] < nv[y]) {
          ++x;
        } else if (nv[y] < nu[x]) {
          ++y;
        } else {
          const NodeId w = nu[x];
          ++stats.total_motifs;
          ++stats.node_degree[u];
          ++stats.node_degree[v];
          ++stats.node_degree[w];
          ++stats.edge_degree[eu[a]];  // (u, v)
          ++stats.edge_degree[eu[x]];  // (u, w)
          ++stats.edge_degree[ev[y]];  // (v, w)
          ++x;
          ++y;
        }
      }
    }
  }
  return stats;
}

WeightedAdjacency::WeightedAdjacency(const Graph& g, std::vector<double> edge_weights)
    : edge_weight_(std::move(edge_weights)) {
  if (edge_weight_.size() != g.edge_count()) {
    throw std::invalid_argument("one weight per edge required");
  }
  offsets_.resize(static_cast<std::size_t>(g.node_count()) + 1);
  slot_weight_.resize(g.slot_count());
  weighted_degree_.assign(g.node_count(), 0.0);
  for (NodeId v = 0; v < g.node_count(); ++v) {
    offsets_[v] = g.slot_begin(v);
    const auto ids = g.incident_edges(v);
    for (std::size_t s = 0; s < ids.size(); ++s) {
      const double w = edge_weight_[ids[s]];
      slot_weight_[offsets_[v] + s] = w;
      weighted_degree_[v] += w;
    }
  }
  offsets_[g.node_count()] = g.slot_count();
}

WeightedAdjacency WeightedAdjacency::unit(const Graph& g) {
  return WeightedAdjacency(g, std::vector<double>(g.edge_count(), 1.0));
}

double WeightedAdjacency::weight(const Graph& g, NodeId a, NodeId b) const {
  const std::int64_t id = g.find_edge(a, b);
  return id < 0 ? 0.0 : edge_weight_[static_cast<std::size_t>(id)];
}

void WeightedAdjacency::write_coo(const Graph& g, std::ostream& out) const {
  const auto edges = g.edges();
  for (std::size_t id = 0; id < edges.size(); ++id) {
    out << edges[id].first << ' ' << edges[id].second << ' '
        << nlohmann::json(edge_weight_[id]).dump() << '\n';
  }
}

WeightedAdjacency build_motif_adjacency(const Graph& g, const MotifStats& stats) {
  if (!stats.matches(g)) {
    throw std::invalid_argument("motif stats were computed on a different graph");
  }
  const double motif_nodes = stats.motif.node_count();
  std::vector<double> weights(g.edge_count());
  for (std::size_t id = 0; id < weights.size(); ++id) {
    const auto ed = stats.edge_degree[id];
    weights[id] = ed == 0 ? 1.0 : 1.0 + static_cast<double>(ed) / motif_nodes;
  }
  return WeightedAdjacency(g, std::move(weights));
}

std::string_view to_string(TransitionMode mode) {
  switch (mode) {
    case TransitionMode::kUniform:
      return "uniform";
    case TransitionMode::kStrictEq2:
      return "strict-eq2";
    case TransitionMode::kSmoothedAm:
      return "smoothed-am";
  }
  return "unknown";
}

TransitionMode parse_transition_mode(std::string_view name) {
  if (name == "uniform") return TransitionMode::kUniform;
  if (name == "strict-eq2" || name == "strict") return TransitionMode::kStrictEq2;
  if (name == "smoothed-am" || name == "smoothed") return TransitionMode::kSmoothedAm;
  throw std::invalid_argument("unknown motif mode: " + std::string(name));
}

TransitionModel::TransitionModel(const Graph& g, TransitionMode mode,
                                 std::vector<double> mass)
    : mode_(mode),
      mass_(std::move(mass)),
      prob_(mass_.size()),
      fallback_(g.node_count(), 0) {
  offsets_.resize(static_cast<std::size_t>(g.node_count()) + 1);
  for (NodeId v = 0; v < g.node_count(); ++v) offsets_[v] = g.slot_begin(v);
  offsets_[g.node_count()] = g.slot_count();

  for (NodeId v = 0; v < g.node_count(); ++v) {
    const std::size_t begin = offsets_[v];
    const std::size_t end = offsets_[v + 1];
    double total = 0.0;
    for (std::size_t s = begin; s < end; ++s) total += mass_[s];
    if (begin != end && total <= 0.0) {
      std::fill(mass_.begin() + begin, mass_.begin() + end, 1.0);
      total = static_cast<double>(end - begin);
      fallback_[v] = 1;
    }
    for (std::size_t s = begin; s < end; ++s) prob_[s] = mass_[s] / total;
  }
}

TransitionModel TransitionModel::uniform(const Graph& g) {
  return TransitionModel(g, TransitionMode::kUniform,
                         std::vector<double>(g.slot_count(), 1.0));
}

TransitionModel build_transition_model(const Graph& g, const MotifStats& stats,
                                       TransitionMode mode) {
  if (mode == TransitionMode::kUniform) return TransitionModel::uniform(g);
  if (!stats.matches(g)) {
    throw std::invalid_argument("motif stats were computed on a different graph");
  }
  std::vector<double> mass(g.slot_count());
  if (mode == TransitionMode::kStrictEq2) {
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto ids = g.incident_edges(v);
      for (std::size_t s = 0; s < ids.size(); ++s) {
        mass[g.slot_begin(v) + s] = static_cast<double>(stats.edge_degree[ids[s]]);
      }
    }
  } else {
    const WeightedAdjacency am = build_motif_adjacency(g, stats);
    for (NodeId v = 0; v < g.node_count(); ++v) {
      const auto row = am.row(v);
      std::copy(row.begin(), row.end(), mass.begin() + g.slot_begin(v));
    }
  }
  return TransitionModel(g, mode, std::move(mass));
}

std::string motif_stats_json(const MotifStats& stats) {
  nlohmann::ordered_json j;
  j["total_motifs"] = stats.total_motifs;
  j["node_degree"] = stats.node_degree;
  auto edges = nlohmann::json::array();
  for (std::size_t id = 0; id < stats.edges.size(); ++id) {
    edges.push_back({stats.edges[id].first, stats.edges[id].second,
                     stats.edge_degree[id]});
  }
  j["edge_degree"] = std::move(edges);
  return j.dump();
}

void write_motif_csv(const Graph& g, const MotifStats& stats, std::ostream& out) {
  out << "kind,i,j,label_i,label_j,degree\n";
  for (NodeId v = 0; v < g.node_count(); ++v) {
    out << "node," << v << ",," << g.label(v) << ",," << stats.node_degree[v] << '\n';
  }
  for (std::size_t id = 0; id < stats.edges.size(); ++id) {
    const Edge e = stats.edges[id];
    out << "edge," << e.first << ',' << e.second << ',' << g.label(e.first) << ','
        << g.label(e.second) << ',' << stats.edge_degree[id] << '\n';
  }
}

}  // namespace offer
