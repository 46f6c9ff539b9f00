// offer: motif-enhanced network embedding pipeline.
//
//   offer stats    --input g.edges
//   offer motifs   --input g.edges [--null-model 10] [--adjacency-out am.coo]
//   offer embed    --input g.edges --algorithm deepwalk --variant mo --out emb.txt
//   offer linkpred --synthetic ppm --algorithms deepwalk,line --seeds 1,2,3
//   offer cluster  --config run.json
//
// Exit status: 0 on success, 2 on bad input or configuration, 1 otherwise.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "offer/graph.h"
#include "offer/motif.h"
#include "offer/pipeline.h"
#include "offer/rng.h"

namespace {

using offer::RunConfig;

constexpr int kUsageError = 2;

// Flags shared by every subcommand. Values only override the config file
// when given on the command line.
struct Flags {
  std::string config_path;
  std::string input;
  std::string synthetic;
  std::string output;
  std::string format;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
  int num_seeds = 0;

  int ppm_nodes = 0;
  double ppm_intra = 0, ppm_inter = 0, ppm_rewire = 0;
  std::uint64_t ppm_seed = 0;

  std::string algorithm;
  std::vector<std::string> algorithms;
  std::string variant;
  std::vector<std::string> variants;
  std::string mode;

  int dim = 0, walks = 0, length = 0, window = 0, negatives = 0, epochs = 0, line_samples = 0;
  double lr = 0, p = 0, q = 0;
  std::string line_order;

  double holdout = 0;
  bool no_protect = false;
  int clusters = 0;
  std::string silhouette_distance;

  int null_model = 0;
  int swaps_per_edge = 0;
  std::string adjacency_out;
  bool binary = false;
  bool dump_config = false;
};

struct Given {
  const CLI::App* app;
  bool operator()(const std::string& name) const {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  }
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration");
  cmd->add_option("--input", f.input, "edge-list file");
  cmd->add_option("--synthetic", f.synthetic, "built-in generator instead of --input (ppm)");
  cmd->add_option("--out", f.output, "output file (default: stdout)");
  cmd->add_option("--format", f.format, "json or csv");
  cmd->add_option("--seed", f.seed, "run seed");
  cmd->add_option("--ppm-nodes", f.ppm_nodes, "planted partition: node count");
  cmd->add_option("--ppm-intra", f.ppm_intra, "planted partition: intra-block degree");
  cmd->add_option("--ppm-inter", f.ppm_inter, "planted partition: inter-block degree");
  cmd->add_option("--ppm-rewire", f.ppm_rewire, "planted partition: intra rewiring probability");
  cmd->add_option("--ppm-seed", f.ppm_seed, "planted partition: generator seed");
  cmd->add_flag("--dump-config", f.dump_config, "print the effective configuration and exit");
}

void add_training(CLI::App* cmd, Flags& f) {
  cmd->add_option("--mode", f.mode, "motif transition mode: strict-eq2 or smoothed-am");
  cmd->add_option("--dim", f.dim, "embedding dimension");
  cmd->add_option("--walks", f.walks, "walks per node");
  cmd->add_option("--length", f.length, "walk length");
  cmd->add_option("--window", f.window, "skip-gram window");
  cmd->add_option("--negatives", f.negatives, "negative samples");
  cmd->add_option("--epochs", f.epochs, "SGNS epochs");
  cmd->add_option("--lr", f.lr, "initial learning rate");
  cmd->add_option("--p", f.p, "node2vec return parameter");
  cmd->add_option("--q", f.q, "node2vec in-out parameter");
  cmd->add_option("--line-order", f.line_order, "first, second or concat");
  cmd->add_option("--line-samples", f.line_samples, "LINE samples per edge");
}

void add_experiment(CLI::App* cmd, Flags& f) {
  cmd->add_option("--algorithms", f.algorithms, "deepwalk,node2vec,line,spectral")->delimiter(',');
  cmd->add_option("--variants", f.variants, "base,mo")->delimiter(',');
  cmd->add_option("--seeds", f.seeds, "comma-separated run seeds")->delimiter(',');
  cmd->add_option("--num-seeds", f.num_seeds, "use seeds 1..N");
}

RunConfig effective_config(const CLI::App* cmd, const Flags& f) {
  RunConfig c = f.config_path.empty() ? RunConfig{} : offer::load_run_config(f.config_path);
  const Given given{cmd};
  if (given("--input")) c.input = f.input;
  if (given("--synthetic")) c.synthetic = f.synthetic;
  if (given("--out")) c.output = f.output;
  if (given("--format")) c.format = f.format;
  if (given("--seed")) c.seeds = {f.seed};
  if (given("--seeds")) c.seeds = f.seeds;
  if (given("--num-seeds")) {
    if (f.num_seeds < 1) throw std::invalid_argument("--num-seeds must be positive");
    c.seeds.clear();
    for (int s = 1; s <= f.num_seeds; ++s) c.seeds.push_back(static_cast<std::uint64_t>(s));
  }
  if (given("--ppm-nodes")) c.ppm.nodes = f.ppm_nodes;
  if (given("--ppm-intra")) c.ppm.intra_degree = f.ppm_intra;
  if (given("--ppm-inter")) c.ppm.inter_degree = f.ppm_inter;
  if (given("--ppm-rewire")) c.ppm.intra_rewire = f.ppm_rewire;
  if (given("--ppm-seed")) c.ppm_seed = f.ppm_seed;
  if (given("--algorithm")) c.algorithms = {offer::parse_algorithm(f.algorithm)};
  if (given("--algorithms")) {
    c.algorithms.clear();
    for (const auto& a : f.algorithms) c.algorithms.push_back(offer::parse_algorithm(a));
  }
  if (given("--variant")) {
    c.variants = {offer::parse_variant(f.variant)};
  } else if (cmd->get_name() == "embed" && f.config_path.empty()) {
    c.variants = {offer::Variant::kBase};
  }
  if (given("--variants")) {
    c.variants.clear();
    for (const auto& v : f.variants) c.variants.push_back(offer::parse_variant(v));
  }
  if (given("--mode")) c.motif_mode = offer::parse_transition_mode(f.mode);
  if (given("--dim")) c.train.dim = f.dim;
  if (given("--walks")) c.train.walks_per_node = f.walks;
  if (given("--length")) c.train.walk_length = f.length;
  if (given("--window")) c.train.window = f.window;
  if (given("--negatives")) c.train.negatives = f.negatives;
  if (given("--epochs")) c.train.epochs = f.epochs;
  if (given("--lr")) c.train.learning_rate = f.lr;
  if (given("--p")) c.train.p = f.p;
  if (given("--q")) c.train.q = f.q;
  if (given("--line-order")) c.train.line_order = offer::parse_line_order(f.line_order);
  if (given("--line-samples")) c.train.line_samples_per_edge = f.line_samples;
  if (given("--holdout")) c.holdout_fraction = f.holdout;
  if (given("--no-protect")) c.protect_connectivity = false;
  if (given("--k")) c.clusters = f.clusters;
  if (given("--silhouette-distance")) {
    if (f.silhouette_distance == "cosine") {
      c.silhouette_distance = offer::SilhouetteDistance::kCosine;
    } else if (f.silhouette_distance == "euclidean") {
      c.silhouette_distance = offer::SilhouetteDistance::kEuclidean;
    } else {
      throw std::invalid_argument("--silhouette-distance must be euclidean or cosine");
    }
  }
  if (given("--null-model")) c.null_model_samples = f.null_model;
  if (given("--swaps-per-edge")) c.swaps_per_edge = f.swaps_per_edge;
  c.validate();
  return c;
}

// Writes to --out when set, stdout otherwise.
void emit(const RunConfig& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + c.output);
  out << text;
}

int cmd_stats(const RunConfig& c) {
  const offer::Graph g = offer::load_dataset(c);
  const offer::GraphStats s = offer::graph_stats(g);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "dataset,num_nodes,num_edges,max_degree,avg_degree,density\n"
       << offer::dataset_name(c) << ',' << s.num_nodes << ',' << s.num_edges << ','
       << s.max_degree << ',' << nlohmann::json(s.avg_degree).dump() << ','
       << nlohmann::json(s.density).dump() << '\n';
    emit(c, os.str());
  } else {
    emit(c, offer::to_json(s) + "\n");
  }
  return 0;
}

int cmd_motifs(const RunConfig& c, const std::string& adjacency_out) {
  const offer::Graph g = offer::load_dataset(c);
  const offer::MotifStats stats = offer::count_triangles(g);
  if (!adjacency_out.empty()) {
    std::ofstream out(adjacency_out);
    if (!out) throw std::runtime_error("cannot write " + adjacency_out);
    offer::build_motif_adjacency(g, stats).write_coo(g, out);
  }

  nlohmann::ordered_json null_model;
  if (c.null_model_samples > 0) {
    std::vector<double> counts;
    for (int i = 0; i < c.null_model_samples; ++i) {
      const offer::Graph random = offer::null_model_rewire(
          g, c.swaps_per_edge, offer::derive_seed(c.seeds.front(), 100, static_cast<std::uint64_t>(i)));
      counts.push_back(static_cast<double>(offer::count_triangles(random).total_motifs));
    }
    double mean = 0.0;
    for (double x : counts) mean += x;
    mean /= static_cast<double>(counts.size());
    double var = 0.0;
    for (double x : counts) var += (x - mean) * (x - mean);
    var = counts.size() > 1 ? var / static_cast<double>(counts.size() - 1) : 0.0;
    null_model = {{"samples", c.null_model_samples},
                  {"swaps_per_edge", c.swaps_per_edge},
                  {"counts", counts},
                  {"mean", mean},
                  {"std", std::sqrt(var)},
                  {"real_exceeds_mean", static_cast<double>(stats.total_motifs) > mean}};
  }

  if (c.format == "csv") {
    std::ostringstream os;
    offer::write_motif_csv(g, stats, os);
    emit(c, os.str());
    if (!null_model.is_null()) std::cerr << null_model.dump() << '\n';
  } else {
    auto j = nlohmann::ordered_json::parse(offer::motif_stats_json(stats));
    if (!null_model.is_null()) j["null_model"] = std::move(null_model);
    emit(c, j.dump() + "\n");
  }
  return 0;
}

int cmd_embed(const RunConfig& c, bool binary) {
  if (c.algorithms.size() != 1 || c.variants.size() != 1) {
    throw std::invalid_argument("embed takes exactly one --algorithm and one --variant");
  }
  const offer::Graph g = offer::load_dataset(c);
  const offer::EmbeddingMatrix emb = offer::embed_graph(
      g, c.algorithms.front(), c.variants.front(), c.motif_mode, c.train, c.seeds.front());
  std::ostringstream os(std::ios::binary);
  if (binary) {
    if (c.output.empty()) throw std::invalid_argument("--binary needs --out");
    offer::write_embedding_binary(emb, os);
  } else {
    offer::write_embedding_text(g, emb, os);
  }
  emit(c, os.str());
  return 0;
}

int cmd_report(const RunConfig& c, bool linkpred) {
  const offer::Graph g = offer::load_dataset(c);
  const auto rows = linkpred ? offer::run_linkpred(g, c) : offer::run_cluster(g, c);
  // Reports default to CSV.
  if (c.format == "json") {
    emit(c, offer::report_json(rows, c) + "\n");
  } else {
    std::ostringstream os;
    offer::write_report_csv(rows, os);
    emit(c, os.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"offer: triangle-motif enhanced network embedding"};
  app.require_subcommand(1);
  Flags f;

  auto* stats = app.add_subcommand("stats", "graph summary statistics");
  add_common(stats, f);

  auto* motifs = app.add_subcommand("motifs", "triangle MND/MED statistics");
  add_common(motifs, f);
  motifs->add_option("--null-model", f.null_model, "compare with N degree-preserving rewirings");
  motifs->add_option("--swaps-per-edge", f.swaps_per_edge, "rewiring swaps per edge");
  motifs->add_option("--adjacency-out", f.adjacency_out, "write the motif-biased adjacency (COO)");

  auto* embed = app.add_subcommand("embed", "train one embedding");
  add_common(embed, f);
  add_training(embed, f);
  embed->add_option("--algorithm", f.algorithm, "deepwalk, node2vec, line or spectral");
  embed->add_option("--variant", f.variant, "base (default) or mo");
  embed->add_flag("--binary", f.binary, "write the compact float32 format");

  auto* linkpred = app.add_subcommand("linkpred", "link-prediction experiment");
  add_common(linkpred, f);
  add_training(linkpred, f);
  add_experiment(linkpred, f);
  linkpred->add_option("--holdout", f.holdout, "held-out edge fraction");
  linkpred->add_flag("--no-protect", f.no_protect, "allow holdouts that disconnect endpoints");

  auto* cluster = app.add_subcommand("cluster", "k-means + silhouette experiment");
  add_common(cluster, f);
  add_training(cluster, f);
  add_experiment(cluster, f);
  cluster->add_option("--k", f.clusters, "number of clusters");
  cluster->add_option("--silhouette-distance", f.silhouette_distance, "euclidean or cosine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  const CLI::App* cmd = app.get_subcommands().front();
  try {
    const RunConfig c = effective_config(cmd, f);
    if (f.dump_config) {
      std::cout << offer::to_json(c) << '\n';
      return 0;
    }
    if (cmd == stats) return cmd_stats(c);
    if (cmd == motifs) return cmd_motifs(c, f.adjacency_out);
    if (cmd == embed) return cmd_embed(c, f.binary);
    if (cmd == linkpred) return cmd_report(c, true);
    return cmd_report(c, false);
  } catch (const offer::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
