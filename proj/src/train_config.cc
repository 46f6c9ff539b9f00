#include "offer/train_config.h"

#include <stdexcept>
#include <string>

namespace offer {

std::string_view to_string(LineOrder order) {
  switch (order) {
    case LineOrder::kFirst:
      return "first";
    case LineOrder::kSecond:
      return "second";
    case LineOrder::kConcat:
      return "concat";
  }
  return "unknown";
}

LineOrder parse_line_order(std::string_view name) {
  if (name == "first" || name == "1") return LineOrder::kFirst;
  if (name == "second" || name == "2") return LineOrder::kSecond;
  if (name == "concat" || name == "both") return LineOrder::kConcat;
  throw std::invalid_argument("unknown LINE order: " + std::string(name));
}

void TrainConfig::validate() const {
  if (dim < 1 || walks_per_node < 1 || walk_length < 1 || window < 1 ||
      negatives < 1 || epochs < 1 || line_samples_per_edge < 1) {
    throw std::invalid_argument("training counts must be positive");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be positive");
  if (!(p > 0.0) || !(q > 0.0)) throw std::invalid_argument("p and q must be positive");
}

}  // namespace offer
