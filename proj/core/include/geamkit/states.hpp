#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "geamkit/linalg.hpp"
#include "geamkit/random.hpp"

namespace geamkit {

inline constexpr double kStateTolerance = 1e-10;

/// Unit-trace positive-semidefinite operator, optionally tagged with a
/// bipartite factorization of its dimension.
class DensityMatrix {
 public:
  /// `dims` is {d}, {dA, dB}, or empty (meaning {rows}).
  explicit DensityMatrix(const ComplexMatrix& m, std::vector<int> dims = {},
                         double tolerance = kStateTolerance);

  int dim() const noexcept { return rho_.dim(); }
  const std::vector<int>& dims() const noexcept { return dims_; }
  bool is_bipartite() const noexcept { return dims_.size() == 2; }
  BipartiteDims bipartite_dims() const;

  const HermitianMatrix& hermitian() const noexcept { return rho_; }
  const ComplexMatrix& matrix() const noexcept { return rho_.matrix(); }

  double purity() const;

  /// Same operator reinterpreted with a different factorization.
  DensityMatrix with_dims(std::vector<int> dims) const;

 private:
  HermitianMatrix rho_;
  std::vector<int> dims_;
};

enum class StateKind { MaxEntangled, Isotropic, MaxMixed };

/// P+, p P+ + (1-p) I/d^2, or the maximally mixed state (I/d^2 when
/// `bipartite`, else I/d). `p` must lie in [0, 1] for the isotropic family.
DensityMatrix canonical_state(StateKind kind, int d, double p = 0.0, bool bipartite = true);

/// G G^dagger / Tr(G G^dagger) with G a d x rank standard complex Gaussian
/// matrix drawn from SplitMix64(seed) via Box-Muller, row-major.
DensityMatrix random_state(int d, int rank, std::uint64_t seed);
DensityMatrix random_state(int d, int rank, SplitMix64& rng);
DensityMatrix random_state(BipartiteDims dims, int rank, std::uint64_t seed);

/// rho_A (x) rho_B with the bipartite tag set.
DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b);

/// Reduced state on `keep`.
DensityMatrix marginal(const DensityMatrix& rho, Subsystem keep);

class SeparableMixture {
 public:
  SeparableMixture(std::vector<double> weights,
                   std::vector<std::pair<DensityMatrix, DensityMatrix>> factors);

  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<std::pair<DensityMatrix, DensityMatrix>>& factors() const noexcept {
    return factors_;
  }
  BipartiteDims dims() const;

 private:
  std::vector<double> weights_;
  std::vector<std::pair<DensityMatrix, DensityMatrix>> factors_;
};

/// sum_j q_j rho^A_j (x) rho^B_j.
DensityMatrix mix_separable(const SeparableMixture& mixture);

/// Random mixture of `terms` product states with random ranks and
/// Dirichlet(1)-style weights.
SeparableMixture random_separable_mixture(BipartiteDims dims, int terms, SplitMix64& rng);

}  // namespace geamkit
