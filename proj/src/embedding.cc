#include "offer/embedding.h"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace offer {

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes = {
      static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
      static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
  out.write(bytes.data(), bytes.size());
}

std::uint32_t get_u32(std::istream& in) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), b.size());
  if (!in) throw std::runtime_error("truncated binary embedding");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

bool EmbeddingMatrix::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void write_embedding_text(const Graph& g, const EmbeddingMatrix& emb, std::ostream& out) {
  if (emb.rows() != g.node_count()) {
    throw std::invalid_argument("embedding row count differs from node count");
  }
  if (!emb.provenance().empty()) out << "# " << emb.provenance() << '\n';
  out << emb.rows() << ' ' << emb.dim() << '\n';
  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < emb.rows(); ++i) {
    out << g.label(static_cast<NodeId>(i));
    for (double x : emb.row(i)) {
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
      out << ' ';
      out.write(buf.data(), res.ptr - buf.data());
    }
    out << '\n';
  }
}

EmbeddingMatrix read_embedding_text(std::istream& in, std::vector<std::string>* labels) {
  std::string line;
  std::string provenance;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0) {
      provenance = line.substr(2);
      continue;
    }
    if (!line.empty()) break;
  }
  std::istringstream header(line);
  std::size_t n = 0;
  std::size_t d = 0;
  if (!(header >> n >> d)) throw std::runtime_error("bad embedding header");
  EmbeddingMatrix emb(n, d);
  emb.set_provenance(provenance);
  if (labels) labels->clear();
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("truncated embedding file");
    std::istringstream row(line);
    std::string label;
    row >> label;
    if (labels) labels->push_back(label);
    for (double& x : emb.row(i)) {
      std::string token;
      if (!(row >> token)) throw std::runtime_error("short embedding row");
      const auto res = std::from_chars(token.data(), token.data() + token.size(), x);
      if (res.ec != std::errc()) throw std::runtime_error("bad embedding value");
    }
  }
  return emb;
}

void write_embedding_binary(const EmbeddingMatrix& emb, std::ostream& out) {
  put_u32(out, static_cast<std::uint32_t>(emb.rows()));
  put_u32(out, static_cast<std::uint32_t>(emb.dim()));
  for (double x : emb.data()) put_u32(out, std::bit_cast<std::uint32_t>(static_cast<float>(x)));
}

EmbeddingMatrix read_embedding_binary(std::istream& in) {
  const std::uint32_t n = get_u32(in);
  const std::uint32_t d = get_u32(in);
  EmbeddingMatrix emb(n, d);
  for (double& x : emb.data()) x = std::bit_cast<float>(get_u32(in));
  return emb;
}

}  // namespace offer
