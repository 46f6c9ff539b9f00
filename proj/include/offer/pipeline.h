#ifndef OFFER_PIPELINE_H_
#define OFFER_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "offer/cluster.h"
#include "offer/embedding.h"
#include "offer/graph.h"
#include "offer/motif.h"
#include "offer/synthetic.h"
#include "offer/train_config.h"

namespace offer {

enum class Algorithm { kDeepWalk, kNode2vec, kLine, kSpectral };
enum class Variant { kBase, kMo };

std::string_view to_string(Algorithm algorithm);
std::string_view to_string(Variant variant);
Algorithm parse_algorithm(std::string_view name);
Variant parse_variant(std::string_view name);

// Everything needed to reproduce a run besides the dataset file itself.
struct RunConfig {
  // Edge-list path; ignored when `synthetic` is set.
  std::string input;
  // "ppm" selects the built-in planted-partition generator.
  std::string synthetic;
  PlantedPartitionConfig ppm;
  std::uint64_t ppm_seed = 1;

  std::vector<Algorithm> algorithms = {Algorithm::kDeepWalk};
  std::vector<Variant> variants = {Variant::kBase, Variant::kMo};
  TransitionMode motif_mode = TransitionMode::kStrictEq2;
  TrainConfig train;

  double holdout_fraction = 0.1;
  bool protect_connectivity = true;
  int clusters = 2;
  SilhouetteDistance silhouette_distance = SilhouetteDistance::kEuclidean;
  std::vector<std::uint64_t> seeds = {1};

  int null_model_samples = 0;
  int swaps_per_edge = 10;

  std::string output;
  // "json", "csv", or empty for the subcommand default (JSON for stats and
  // motifs, CSV for reports).
  std::string format;

  // Throws std::invalid_argument describing the first inconsistency.
  void validate() const;
};

std::string to_json(const RunConfig& config);
RunConfig run_config_from_json(std::string_view text);
RunConfig load_run_config(const std::string& path);

// Display name for reports: the input file stem or "ppm".
std::string dataset_name(const RunConfig& config);
Graph load_dataset(const RunConfig& config);

// Trains one back-end. Mo-DeepWalk and Mo-Node2vec walk on the motif
// transition model in `mode`; Mo-LINE and Mo-Spectral use the motif-biased
// adjacency as edge weights.
EmbeddingMatrix embed_graph(const Graph& g, Algorithm algorithm, Variant variant,
                            TransitionMode mode, const TrainConfig& config,
                            std::uint64_t seed);

struct ReportRow {
  std::string dataset;
  std::string algorithm;
  std::string variant;
  std::string seed;
  std::optional<double> auc{}, accuracy{}, precision{}, recall{}, specificity{}, f1{}, sc{};
};

struct VariantSummary {
  std::string algorithm;
  std::string variant;
  std::size_t runs = 0;
  // Parallel to kMetricColumns; NaN when the metric is absent.
  std::vector<double> mean;
  std::vector<double> stddev;
};

inline constexpr std::string_view kMetricColumns[] = {
    "auc", "accuracy", "precision", "recall", "specificity", "f1", "sc"};

// One row per (algorithm, variant, seed), sorted.
std::vector<ReportRow> run_linkpred(const Graph& g, const RunConfig& config);
std::vector<ReportRow> run_cluster(const Graph& g, const RunConfig& config);

// Mean and sample standard deviation per (algorithm, variant).
std::vector<VariantSummary> summarize(const std::vector<ReportRow>& rows);

// CSV with columns dataset,algorithm,variant,seed,auc,accuracy,precision,
// recall,specificity,f1,sc. Data rows are followed by one summary row per
// (algorithm, variant) whose seed cell is "mean±std" and whose metric cells
// read "<mean>±<std>".
void write_report_csv(const std::vector<ReportRow>& rows, std::ostream& out);
std::string report_json(const std::vector<ReportRow>& rows, const RunConfig& config);

}  // namespace offer

#endif  // OFFER_PIPELINE_H_
