#ifndef OFFER_EMBEDDING_H_
#define OFFER_EMBEDDING_H_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "offer/graph.h"

namespace offer {

// |V| x d row-major matrix, one row per node.
class EmbeddingMatrix {
 public:
  EmbeddingMatrix() = default;
  EmbeddingMatrix(std::size_t rows, std::size_t dim)
      : rows_(rows), dim_(dim), data_(rows * dim, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  std::span<double> row(std::size_t i) { return {data_.data() + i * dim_, dim_}; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * dim_, dim_};
  }
  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool all_finite() const;

  // Free-form description of how the matrix was produced (JSON by convention).
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  friend bool operator==(const EmbeddingMatrix& a, const EmbeddingMatrix& b) {
    return a.rows_ == b.rows_ && a.dim_ == b.dim_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t dim_ = 0;
  std::vector<double> data_;
  std::string provenance_;
};

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

// Text format: optional "# <provenance>" line, then "n d", then one line per
// node "label v1 ... vd". Values are written in shortest round-trip form.
void write_embedding_text(const Graph& g, const EmbeddingMatrix& emb, std::ostream& out);
// Reads the text format back; rows are matched to nodes by label order in the
// file (row i is the i-th data line).
EmbeddingMatrix read_embedding_text(std::istream& in, std::vector<std::string>* labels = nullptr);

// Binary format: uint32 n, uint32 d (little-endian), then n*d float32
// little-endian values row-major.
void write_embedding_binary(const EmbeddingMatrix& emb, std::ostream& out);
EmbeddingMatrix read_embedding_binary(std::istream& in);

}  // namespace offer

#endif  // OFFER_EMBEDDING_H_
