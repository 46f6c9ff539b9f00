#ifndef OFFER_TRAIN_CONFIG_H_
#define OFFER_TRAIN_CONFIG_H_

#include <string_view>

namespace offer {

enum class LineOrder { kFirst, kSecond, kConcat };

std::string_view to_string(LineOrder order);
LineOrder parse_line_order(std::string_view name);

// Hyperparameters shared by the embedding back-ends. The defaults are the
// usual DeepWalk/node2vec settings.
struct TrainConfig {
  int dim = 64;
  int walks_per_node = 10;
  int walk_length = 40;
  int window = 5;
  int negatives = 5;
  int epochs = 5;
  double learning_rate = 0.025;
  // node2vec return and in-out parameters.
  double p = 1.0;
  double q = 1.0;
  LineOrder line_order = LineOrder::kConcat;
  // LINE draws line_samples_per_edge * |E| edge samples per order.
  int line_samples_per_edge = 200;

  // Throws std::invalid_argument on a non-positive count or rate.
  void validate() const;
};

}  // namespace offer

#endif  // OFFER_TRAIN_CONFIG_H_
