#ifndef OFFER_SPECTRAL_H_
#define OFFER_SPECTRAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "offer/embedding.h"
#include "offer/graph.h"
#include "offer/motif.h"

namespace offer {

// y = L x for the symmetric normalized Laplacian L = I - D^-1/2 W D^-1/2 of
// the weighted graph. Rows of isolated nodes are zero.
void apply_normalized_laplacian(const Graph& g, const WeightedAdjacency& weights,
                                std::span<const double> x, std::span<double> y);

struct SpectralDecomposition {
  // Ascending nontrivial eigenvalues and their unit eigenvectors.
  std::vector<double> eigenvalues;
  std::vector<std::vector<double>> eigenvectors;
  // ||L x - lambda x||_2 per returned pair.
  std::vector<double> residuals;
  std::size_t components = 0;
  std::size_t basis_size = 0;
};

// The `count` smallest eigenpairs of L orthogonal to its trivial null space.
// That null space is spanned by one vector D^1/2 1_C per connected component
// C and is deflated up front, so disconnected graphs work: every component
// contributes its own zero mode, none of which is returned.
//
// Block Krylov iteration with full reorthogonalization; Rayleigh-Ritz on the
// growing basis until every wanted residual is below `tolerance`. Signs are
// fixed so the first component with |x_i| > 1e-9 is positive.
SpectralDecomposition smallest_nontrivial_eigenpairs(const Graph& g,
                                                     const WeightedAdjacency& weights,
                                                     std::size_t count,
                                                     std::uint64_t seed,
                                                     double tolerance = 1e-9);

// Spectral embedding: row i holds component i of the first `dim` nontrivial
// eigenvectors. Requires dim < |V| and at least dim nontrivial modes.
EmbeddingMatrix train_spectral(const Graph& g, const WeightedAdjacency& weights,
                               std::size_t dim, std::uint64_t seed);
EmbeddingMatrix train_spectral(const Graph& g, std::size_t dim, std::uint64_t seed);

}  // namespace offer

#endif  // OFFER_SPECTRAL_H_
