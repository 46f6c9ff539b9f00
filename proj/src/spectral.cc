#include "offer/spectral.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "offer/rng.h"

namespace offer {

namespace {

using Vec = std::vector<double>;

std::vector<std::vector<NodeId>> connected_components(const Graph& g) {
  std::vector<std::vector<NodeId>> components;
  std::vector<char> seen(g.node_count(), 0);
  std::vector<NodeId> stack;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    if (seen[s]) continue;
    components.emplace_back();
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      const NodeId v = stack.back();
      stack.pop_back();
      components.back().push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Two passes of classical Gram-Schmidt against each set.
void orthogonalize(Vec& v, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const Vec& q : a) axpy(-dot(q, v), q, v);
    for (const Vec& q : b) axpy(-dot(q, v), q, v);
  }
}

Vec random_vector(std::size_t n, Rng& rng) {
  Vec v(n);
  for (double& x : v) x = rng.uniform() - 0.5;
  return v;
}

}  // namespace

void apply_normalized_laplacian(const Graph& g, const WeightedAdjacency& weights,
                                std::span<const double> x, std::span<double> y) {
  const NodeId n = g.node_count();
  for (NodeId i = 0; i < n; ++i) {
    const double deg = weights.weighted_degree(i);
    if (!(deg > 0.0)) {
      y[i] = 0.0;
      continue;
    }
    const auto nbrs = g.neighbors(i);
    const auto w = weights.row(i);
    double acc = 0.0;
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      acc += w[k] * x[nbrs[k]] / std::sqrt(weights.weighted_degree(nbrs[k]));
    }
    y[i] = x[i] - acc / std::sqrt(deg);
  }
}

SpectralDecomposition smallest_nontrivial_eigenpairs(const Graph& g,
                                                     const WeightedAdjacency& weights,
                                                     std::size_t count,
                                                     std::uint64_t seed,
                                                     double tolerance) {
  const std::size_t n = g.node_count();
  if (weights.node_count() != g.node_count()) {
    throw std::invalid_argument("weights do not belong to this graph");
  }
  for (double w : weights.edge_weights()) {
    if (!(w > 0.0)) throw std::invalid_argument("spectral weights must be positive");
  }

  // Deflation space: one normalized D^1/2 1_C per component.
  std::vector<Vec> trivial;
  for (const auto& component : connected_components(g)) {
    Vec z(n, 0.0);
    if (component.size() == 1) {
      z[component[0]] = 1.0;
    } else {
      double total = 0.0;
      for (NodeId v : component) total += weights.weighted_degree(v);
      for (NodeId v : component) z[v] = std::sqrt(weights.weighted_degree(v) / total);
    }
    trivial.push_back(std::move(z));
  }
  const std::size_t free_dim = n - trivial.size();
  if (count == 0 || count > free_dim) {
    throw std::invalid_argument("requested " + std::to_string(count) +
                                " eigenpairs but only " + std::to_string(free_dim) +
                                " nontrivial modes exist");
  }

  auto apply = [&](const Vec& x) {
    Vec y(n);
    apply_normalized_laplacian(g, weights, x, y);
    return y;
  };

  Rng rng(seed);
  const std::size_t block = count;
  std::vector<Vec> basis;
  std::vector<Vec> images;  // L * basis
  Eigen::MatrixXd projected(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;

  std::vector<Vec> pending;
  for (std::size_t i = 0; i < block; ++i) pending.push_back(random_vector(n, rng));

  while (true) {
    const std::size_t before = basis.size();
    for (Vec& v : pending) {
      if (basis.size() == free_dim) break;
      const double original = std::sqrt(dot(v, v));
      orthogonalize(v, trivial, basis);
      double len = std::sqrt(dot(v, v));
      if (!(len > 1e-8 * original) || !(len > 0.0)) {
        // The Krylov direction collapsed; continue from a fresh random vector.
        v = random_vector(n, rng);
        orthogonalize(v, trivial, basis);
        len = std::sqrt(dot(v, v));
        if (!(len > 1e-12)) continue;
      }
      for (double& x : v) x /= len;
      images.push_back(apply(v));
      basis.push_back(std::move(v));
    }

    const std::size_t m = basis.size();
    projected.conservativeResize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    for (std::size_t j = before; j < m; ++j) {
      for (std::size_t i = 0; i <= j; ++i) {
        const double h = 0.5 * (dot(basis[i], images[j]) + dot(basis[j], images[i]));
        projected(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h;
        projected(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = h;
      }
    }

    bool done = m == free_dim;
    if (m >= count) {
      solver.compute(projected);
      if (solver.info() != Eigen::Success) throw std::runtime_error("projected eigensolve failed");
      bool converged = true;
      for (std::size_t k = 0; k < count && converged; ++k) {
        const auto s = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
        const double theta = solver.eigenvalues()(static_cast<Eigen::Index>(k));
        Vec r(n, 0.0);
        for (std::size_t j = 0; j < m; ++j) {
          const double c = s(static_cast<Eigen::Index>(j));
          axpy(c, images[j], r);
          axpy(-c * theta, basis[j], r);
        }
        converged = std::sqrt(dot(r, r)) <= tolerance;
      }
      done = done || converged;
    }
    if (done) break;

    pending.assign(images.begin() + static_cast<std::ptrdiff_t>(before), images.end());
    if (pending.empty()) {
      for (std::size_t i = 0; i < block; ++i) pending.push_back(random_vector(n, rng));
    }
  }

  SpectralDecomposition out;
  out.components = trivial.size();
  out.basis_size = basis.size();
  for (std::size_t k = 0; k < count; ++k) {
    const auto s = solver.eigenvectors().col(static_cast<Eigen::Index>(k));
    Vec x(n, 0.0);
    for (std::size_t j = 0; j < basis.size(); ++j) axpy(s(static_cast<Eigen::Index>(j)), basis[j], x);
    const double len = std::sqrt(dot(x, x));
    for (double& v : x) v /= len;
    const auto lead = std::find_if(x.begin(), x.end(), [](double v) { return std::abs(v) > 1e-9; });
    if (lead != x.end() && *lead < 0.0) {
      for (double& v : x) v = -v;
    }
    const double theta = solver.eigenvalues()(static_cast<Eigen::Index>(k));
    Vec r = apply(x);
    axpy(-theta, x, r);
    out.eigenvalues.push_back(theta);
    out.residuals.push_back(std::sqrt(dot(r, r)));
    out.eigenvectors.push_back(std::move(x));
  }
  return out;
}

EmbeddingMatrix train_spectral(const Graph& g, const WeightedAdjacency& weights,
                               std::size_t dim, std::uint64_t seed) {
  if (dim == 0 || dim >= g.node_count()) {
    throw std::invalid_argument("spectral embedding needs 0 < dim < |V|");
  }
  const auto spectrum = smallest_nontrivial_eigenpairs(g, weights, dim, seed);
  EmbeddingMatrix emb(g.node_count(), dim);
  for (std::size_t k = 0; k < dim; ++k) {
    for (std::size_t i = 0; i < emb.rows(); ++i) emb.row(i)[k] = spectrum.eigenvectors[k][i];
  }
  return emb;
}

EmbeddingMatrix train_spectral(const Graph& g, std::size_t dim, std::uint64_t seed) {
  return train_spectral(g, WeightedAdjacency::unit(g), dim, seed);
}

}  // namespace offer
