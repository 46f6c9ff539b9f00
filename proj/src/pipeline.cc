#include "offer/pipeline.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "offer/line.h"
#include "offer/metrics.h"
#include "offer/rng.h"
#include "offer/sgns.h"
#include "offer/spectral.h"
#include "offer/split.h"
#include "offer/walks.h"

namespace offer {

namespace {

using json = nlohmann::ordered_json;

// Sub-streams of a run seed.
enum Stream : std::uint64_t { kSplit = 1, kEmbed = 2, kCluster = 3, kWalks = 10, kTrain = 11 };

std::string format_double(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double x) {
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::fixed, 6);
  return std::string(buf.data(), res.ptr);
}

json train_to_json(const TrainConfig& t) {
  return json{{"dim", t.dim},
              {"walks_per_node", t.walks_per_node},
              {"walk_length", t.walk_length},
              {"window", t.window},
              {"negatives", t.negatives},
              {"epochs", t.epochs},
              {"learning_rate", t.learning_rate},
              {"p", t.p},
              {"q", t.q},
              {"line_order", std::string(to_string(t.line_order))},
              {"line_samples_per_edge", t.line_samples_per_edge}};
}

// Reads `key` into `out` when present and records it as consumed.
template <typename T>
void read(const json& j, const char* key, T& out, std::set<std::string>& seen) {
  seen.insert(key);
  if (j.contains(key)) out = j.at(key).get<T>();
}

void reject_unknown(const json& j, const std::set<std::string>& seen, const char* where) {
  for (const auto& [key, value] : j.items()) {
    if (!seen.contains(key)) {
      throw std::invalid_argument(std::string("unknown key '") + key + "' in " + where);
    }
  }
}

TrainConfig train_from_json(const json& j) {
  TrainConfig t;
  std::set<std::string> seen;
  read(j, "dim", t.dim, seen);
  read(j, "walks_per_node", t.walks_per_node, seen);
  read(j, "walk_length", t.walk_length, seen);
  read(j, "window", t.window, seen);
  read(j, "negatives", t.negatives, seen);
  read(j, "epochs", t.epochs, seen);
  read(j, "learning_rate", t.learning_rate, seen);
  read(j, "p", t.p, seen);
  read(j, "q", t.q, seen);
  std::string order(to_string(t.line_order));
  read(j, "line_order", order, seen);
  t.line_order = parse_line_order(order);
  read(j, "line_samples_per_edge", t.line_samples_per_edge, seen);
  reject_unknown(j, seen, "train");
  return t;
}

std::string provenance(Algorithm algorithm, Variant variant, TransitionMode mode,
                       const TrainConfig& config, std::uint64_t seed) {
  json j;
  j["algorithm"] = std::string(to_string(algorithm));
  j["variant"] = std::string(to_string(variant));
  j["motif_mode"] = std::string(to_string(mode));
  j["seed"] = seed;
  j["train"] = train_to_json(config);
  return j.dump();
}

std::string key_of(const ReportRow& r) { return r.algorithm + "\x1f" + r.variant; }

std::vector<std::optional<double>> metric_values(const ReportRow& r) {
  return {r.auc, r.accuracy, r.precision, r.recall, r.specificity, r.f1, r.sc};
}

void sort_rows(std::vector<ReportRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
    if (a.variant != b.variant) return a.variant < b.variant;
    // Numeric seed order.
    if (a.seed.size() != b.seed.size()) return a.seed.size() < b.seed.size();
    return a.seed < b.seed;
  });
}

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kDeepWalk:
      return "deepwalk";
    case Algorithm::kNode2vec:
      return "node2vec";
    case Algorithm::kLine:
      return "line";
    case Algorithm::kSpectral:
      return "spectral";
  }
  return "unknown";
}

std::string_view to_string(Variant variant) {
  return variant == Variant::kBase ? "base" : "mo";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "deepwalk") return Algorithm::kDeepWalk;
  if (name == "node2vec") return Algorithm::kNode2vec;
  if (name == "line") return Algorithm::kLine;
  if (name == "spectral") return Algorithm::kSpectral;
  throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

Variant parse_variant(std::string_view name) {
  if (name == "base") return Variant::kBase;
  if (name == "mo") return Variant::kMo;
  throw std::invalid_argument("unknown variant: " + std::string(name));
}

void RunConfig::validate() const {
  train.validate();
  if (synthetic.empty() && input.empty()) {
    throw std::invalid_argument("no input: pass --input or --synthetic ppm");
  }
  if (!synthetic.empty() && synthetic != "ppm") {
    throw std::invalid_argument("unknown synthetic generator: " + synthetic);
  }
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  if (variants.empty()) throw std::invalid_argument("no variants selected");
  if (seeds.empty()) throw std::invalid_argument("seed list is empty");
  std::set<std::uint64_t> unique(seeds.begin(), seeds.end());
  if (unique.size() != seeds.size()) throw std::invalid_argument("duplicate seeds");
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0)) {
    throw std::invalid_argument("holdout_fraction must lie in (0, 1)");
  }
  if (clusters < 2) throw std::invalid_argument("clusters must be >= 2");
  if (null_model_samples < 0) throw std::invalid_argument("null_model_samples must be >= 0");
  if (swaps_per_edge < 1) throw std::invalid_argument("swaps_per_edge must be >= 1");
  if (!format.empty() && format != "json" && format != "csv") {
    throw std::invalid_argument("format must be json or csv");
  }
}

std::string to_json(const RunConfig& c) {
  json j;
  j["input"] = c.input;
  j["synthetic"] = c.synthetic;
  j["ppm"] = {{"nodes", c.ppm.nodes},
              {"blocks", c.ppm.blocks},
              {"intra_degree", c.ppm.intra_degree},
              {"inter_degree", c.ppm.inter_degree},
              {"intra_rewire", c.ppm.intra_rewire},
              {"seed", c.ppm_seed}};
  auto algorithms = json::array();
  for (Algorithm a : c.algorithms) algorithms.push_back(std::string(to_string(a)));
  j["algorithms"] = std::move(algorithms);
  auto variants = json::array();
  for (Variant v : c.variants) variants.push_back(std::string(to_string(v)));
  j["variants"] = std::move(variants);
  j["motif_mode"] = std::string(to_string(c.motif_mode));
  j["train"] = train_to_json(c.train);
  j["holdout_fraction"] = c.holdout_fraction;
  j["protect_connectivity"] = c.protect_connectivity;
  j["clusters"] = c.clusters;
  j["silhouette_distance"] =
      c.silhouette_distance == SilhouetteDistance::kCosine ? "cosine" : "euclidean";
  j["seeds"] = c.seeds;
  j["null_model_samples"] = c.null_model_samples;
  j["swaps_per_edge"] = c.swaps_per_edge;
  j["output"] = c.output;
  j["format"] = c.format;
  return j.dump(2);
}

RunConfig run_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  RunConfig c;
  std::set<std::string> seen;
  try {
    read(j, "input", c.input, seen);
    read(j, "synthetic", c.synthetic, seen);
    seen.insert("ppm");
    if (j.contains("ppm")) {
      const json& p = j.at("ppm");
      std::set<std::string> pseen;
      read(p, "nodes", c.ppm.nodes, pseen);
      read(p, "blocks", c.ppm.blocks, pseen);
      read(p, "intra_degree", c.ppm.intra_degree, pseen);
      read(p, "inter_degree", c.ppm.inter_degree, pseen);
      read(p, "intra_rewire", c.ppm.intra_rewire, pseen);
      read(p, "seed", c.ppm_seed, pseen);
      reject_unknown(p, pseen, "ppm");
    }
    seen.insert("algorithms");
    if (j.contains("algorithms")) {
      c.algorithms.clear();
      for (const auto& a : j.at("algorithms")) c.algorithms.push_back(parse_algorithm(a.get<std::string>()));
    }
    seen.insert("variants");
    if (j.contains("variants")) {
      c.variants.clear();
      for (const auto& v : j.at("variants")) c.variants.push_back(parse_variant(v.get<std::string>()));
    }
    std::string mode(to_string(c.motif_mode));
    read(j, "motif_mode", mode, seen);
    c.motif_mode = parse_transition_mode(mode);
    seen.insert("train");
    if (j.contains("train")) c.train = train_from_json(j.at("train"));
    read(j, "holdout_fraction", c.holdout_fraction, seen);
    read(j, "protect_connectivity", c.protect_connectivity, seen);
    read(j, "clusters", c.clusters, seen);
    std::string distance = "euclidean";
    read(j, "silhouette_distance", distance, seen);
    if (distance == "cosine") {
      c.silhouette_distance = SilhouetteDistance::kCosine;
    } else if (distance != "euclidean") {
      throw std::invalid_argument("silhouette_distance must be euclidean or cosine");
    }
    read(j, "seeds", c.seeds, seen);
    read(j, "null_model_samples", c.null_model_samples, seen);
    read(j, "swaps_per_edge", c.swaps_per_edge, seen);
    read(j, "output", c.output, seen);
    read(j, "format", c.format, seen);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  reject_unknown(j, seen, "config");
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return run_config_from_json(buf.str());
}

std::string dataset_name(const RunConfig& config) {
  if (!config.synthetic.empty()) return config.synthetic;
  return std::filesystem::path(config.input).stem().string();
}

Graph load_dataset(const RunConfig& config) {
  if (config.synthetic == "ppm") return planted_partition(config.ppm, config.ppm_seed).graph;
  if (!config.synthetic.empty()) {
    throw std::invalid_argument("unknown synthetic generator: " + config.synthetic);
  }
  return load_edge_list(config.input);
}

EmbeddingMatrix embed_graph(const Graph& g, Algorithm algorithm, Variant variant,
                            TransitionMode mode, const TrainConfig& config,
                            std::uint64_t seed) {
  config.validate();
  const bool mo = variant == Variant::kMo;
  std::optional<MotifStats> stats;
  if (mo) stats = count_triangles(g);

  EmbeddingMatrix emb;
  switch (algorithm) {
    case Algorithm::kDeepWalk:
    case Algorithm::kNode2vec: {
      const TransitionModel transitions =
          mo ? build_transition_model(g, *stats, mode) : TransitionModel::uniform(g);
      const WalkCorpus corpus =
          algorithm == Algorithm::kDeepWalk
              ? generate_walks(g, transitions, config, derive_seed(seed, kWalks))
              : node2vec_walks(g, transitions, config.p, config.q, config,
                               derive_seed(seed, kWalks));
      emb = train_sgns(corpus, config, derive_seed(seed, kTrain));
      break;
    }
    case Algorithm::kLine: {
      const WeightedAdjacency weights =
          mo ? build_motif_adjacency(g, *stats) : WeightedAdjacency::unit(g);
      emb = train_line(g, weights, config, derive_seed(seed, kTrain));
      break;
    }
    case Algorithm::kSpectral: {
      const WeightedAdjacency weights =
          mo ? build_motif_adjacency(g, *stats) : WeightedAdjacency::unit(g);
      emb = train_spectral(g, weights, static_cast<std::size_t>(config.dim),
                           derive_seed(seed, kTrain));
      break;
    }
  }
  emb.set_provenance(provenance(algorithm, variant, mode, config, seed));
  return emb;
}

std::vector<ReportRow> run_linkpred(const Graph& g, const RunConfig& config) {
  config.validate();
  const std::string dataset = dataset_name(config);
  std::vector<ReportRow> rows;
  for (std::uint64_t seed : config.seeds) {
    const LinkPredSplit split = make_split(g, config.holdout_fraction,
                                           derive_seed(seed, kSplit),
                                           config.protect_connectivity);
    for (Algorithm algorithm : config.algorithms) {
      for (Variant variant : config.variants) {
        const EmbeddingMatrix emb =
            embed_graph(split.train_graph, algorithm, variant, config.motif_mode,
                        config.train, derive_seed(seed, kEmbed));
        const auto pos = cosine_score(emb, split.positive_test);
        const auto neg = cosine_score(emb, split.negative_test);
        const MetricsReport m = compute_metrics(pos.scores, neg.scores, MedianThreshold{});
        ReportRow row{dataset, std::string(to_string(algorithm)),
                      std::string(to_string(variant)), std::to_string(seed)};
        row.auc = m.auc;
        row.accuracy = m.accuracy;
        row.precision = m.precision;
        row.recall = m.recall;
        row.specificity = m.specificity;
        row.f1 = m.f1;
        rows.push_back(std::move(row));
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<ReportRow> run_cluster(const Graph& g, const RunConfig& config) {
  config.validate();
  const std::string dataset = dataset_name(config);
  std::vector<ReportRow> rows;
  for (std::uint64_t seed : config.seeds) {
    for (Algorithm algorithm : config.algorithms) {
      for (Variant variant : config.variants) {
        const EmbeddingMatrix emb = embed_graph(g, algorithm, variant, config.motif_mode,
                                                config.train, derive_seed(seed, kEmbed));
        const KMeansResult km = kmeans_cluster(emb, config.clusters, derive_seed(seed, kCluster));
        ReportRow row{dataset, std::string(to_string(algorithm)),
                      std::string(to_string(variant)), std::to_string(seed)};
        // k-means can collapse to one cluster on degenerate embeddings; the
        // silhouette is undefined there and reported as 0.
        std::set<int> used(km.assignment.begin(), km.assignment.end());
        row.sc = used.size() < 2
                     ? 0.0
                     : silhouette_score(emb, km.assignment, config.silhouette_distance).score;
        rows.push_back(std::move(row));
      }
    }
  }
  sort_rows(rows);
  return rows;
}

std::vector<VariantSummary> summarize(const std::vector<ReportRow>& rows) {
  const std::size_t columns = std::size(kMetricColumns);
  std::vector<VariantSummary> out;
  std::map<std::string, std::size_t> index;
  std::vector<std::vector<std::vector<double>>> values;
  for (const ReportRow& r : rows) {
    auto [it, inserted] = index.try_emplace(key_of(r), out.size());
    if (inserted) {
      out.push_back({r.algorithm, r.variant, 0, {}, {}});
      values.emplace_back(columns);
    }
    ++out[it->second].runs;
    const auto metrics = metric_values(r);
    for (std::size_t c = 0; c < columns; ++c) {
      if (metrics[c]) values[it->second][c].push_back(*metrics[c]);
    }
  }
  for (std::size_t s = 0; s < out.size(); ++s) {
    for (std::size_t c = 0; c < columns; ++c) {
      const auto& v = values[s][c];
      if (v.empty()) {
        out[s].mean.push_back(std::numeric_limits<double>::quiet_NaN());
        out[s].stddev.push_back(std::numeric_limits<double>::quiet_NaN());
        continue;
      }
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
      out[s].mean.push_back(mean);
      out[s].stddev.push_back(std::sqrt(var));
    }
  }
  return out;
}

void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out) {
  out << "dataset,algorithm,variant,seed";
  for (std::string_view c : kMetricColumns) out << ',' << c;
  out << '\n';
  for (const ReportRow& r : rows) {
    out << r.dataset << ',' << r.algorithm << ',' << r.variant << ',' << r.seed;
    for (const auto& m : metric_values(r)) {
      out << ',';
      if (m) out << format_double(*m);
    }
    out << '\n';
  }
  const std::string dataset = rows.empty() ? "" : rows.front().dataset;
  for (const VariantSummary& s : summarize(rows)) {
    out << dataset << ',' << s.algorithm << ',' << s.variant << ",mean±std";
    for (std::size_t c = 0; c < s.mean.size(); ++c) {
      out << ',';
      if (!std::isnan(s.mean[c])) out << format_fixed(s.mean[c]) << "±" << format_fixed(s.stddev[c]);
    }
    out << '\n';
  }
}

std::string report_json(const std::vector<ReportRow>& rows, const RunConfig& config) {
  json j;
  j["config"] = json::parse(to_json(config));
  auto data = json::array();
  for (const ReportRow& r : rows) {
    json row{{"dataset", r.dataset}, {"algorithm", r.algorithm}, {"variant", r.variant},
             {"seed", r.seed}};
    const auto metrics = metric_values(r);
    for (std::size_t c = 0; c < metrics.size(); ++c) {
      if (metrics[c]) row[std::string(kMetricColumns[c])] = *metrics[c];
    }
    data.push_back(std::move(row));
  }
  j["rows"] = std::move(data);
  auto summary = json::array();
  for (const VariantSummary& s : summarize(rows)) {
    json entry{{"algorithm", s.algorithm}, {"variant", s.variant}, {"runs", s.runs}};
    for (std::size_t c = 0; c < s.mean.size(); ++c) {
      if (std::isnan(s.mean[c])) continue;
      entry[std::string(kMetricColumns[c])] = {{"mean", s.mean[c]}, {"std", s.stddev[c]}};
    }
    summary.push_back(std::move(entry));
  }
  j["summary"] = std::move(summary);
  return j.dump(2);
}

}  // namespace offer
