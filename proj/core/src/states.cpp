#include "geamkit/states.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "geamkit/error.hpp"

namespace geamkit {

namespace {

std::vector<int> normalize_dims(std::vector<int> dims, int total) {
  if (dims.empty()) return {total};
  if (dims.size() > 2) throw RejectionError("state dims must list one or two subsystem dimensions");
  int product = 1;
  for (int d : dims) {
    if (d < 1) throw RejectionError("subsystem dimensions must be positive");
    product *= d;
  }
  if (product != total) {
    throw RejectionError("subsystem dimensions multiply to " + std::to_string(product) +
                         " but the matrix is " + std::to_string(total) + "x" + std::to_string(total));
  }
  return dims;
}

}  // namespace

DensityMatrix::DensityMatrix(const ComplexMatrix& m, std::vector<int> dims, double tolerance)
    : rho_(m, kHermitianTolerance) {
  dims_ = normalize_dims(std::move(dims), rho_.dim());
  const double tr = rho_.trace();
  if (std::abs(tr - 1.0) > tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix trace deviates from 1 by " << (tr - 1.0);
    throw RejectionError(os.str());
  }
  const double lam = min_eigenvalue(rho_);
  if (lam < -tolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "density matrix is not positive semidefinite: min eigenvalue " << lam;
    throw RejectionError(os.str());
  }
}

BipartiteDims DensityMatrix::bipartite_dims() const {
  if (!is_bipartite()) throw RejectionError("state carries no bipartite factorization");
  return {dims_[0], dims_[1]};
}

double DensityMatrix::purity() const { return rho_.hs_inner(rho_); }

DensityMatrix DensityMatrix::with_dims(std::vector<int> dims) const {
  DensityMatrix copy = *this;
  copy.dims_ = normalize_dims(std::move(dims), dim());
  return copy;
}

DensityMatrix canonical_state(StateKind kind, int d, double p, bool bipartite) {
  if (d < 2) throw RejectionError("canonical states need d >= 2");
  const int d2 = d * d;
  switch (kind) {
    case StateKind::MaxEntangled:
      return DensityMatrix(max_entangled_projector(d), {d, d});
    case StateKind::Isotropic: {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw RejectionError("isotropic mixing parameter p = " + std::to_string(p) + " outside [0, 1]");
      }
      const ComplexMatrix rho = p * max_entangled_projector(d) +
                                ((1.0 - p) / d2) * ComplexMatrix::Identity(d2, d2);
      return DensityMatrix(rho, {d, d});
    }
    case StateKind::MaxMixed:
      if (bipartite) return DensityMatrix(ComplexMatrix::Identity(d2, d2) / d2, {d, d});
      return DensityMatrix(ComplexMatrix::Identity(d, d) / d, {d});
  }
  throw RejectionError("unknown state kind");
}

DensityMatrix random_state(int d, int rank, SplitMix64& rng) {
  if (d < 1) throw RejectionError("random_state needs d >= 1");
  if (rank < 1 || rank > d) {
    throw RejectionError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(d) + "]");
  }
  ComplexMatrix g(d, rank);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < rank; ++j) g(i, j) = rng.complex_gaussian();
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

DensityMatrix random_state(int d, int rank, std::uint64_t seed) {
  SplitMix64 rng(seed);
  return random_state(d, rank, rng);
}

DensityMatrix random_state(BipartiteDims dims, int rank, std::uint64_t seed) {
  return random_state(dims.total(), rank, seed).with_dims({dims.a, dims.b});
}

DensityMatrix product_state(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()), {a.dim(), b.dim()});
}

DensityMatrix marginal(const DensityMatrix& rho, Subsystem keep) {
  return DensityMatrix(partial_trace(rho.matrix(), rho.bipartite_dims(), keep));
}

SeparableMixture::SeparableMixture(std::vector<double> weights,
                                   std::vector<std::pair<DensityMatrix, DensityMatrix>> factors)
    : weights_(std::move(weights)), factors_(std::move(factors)) {
  if (weights_.empty() || weights_.size() != factors_.size()) {
    throw RejectionError("separable mixture needs one weight per product term");
  }
  double sum = 0.0;
  for (double q : weights_) {
    if (!(q >= 0.0)) throw RejectionError("mixture weights must be nonnegative");
    sum += q;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw RejectionError("mixture weights must sum to 1");
  for (const auto& [a, b] : factors_) {
    if (a.dim() != factors_.front().first.dim() || b.dim() != factors_.front().second.dim()) {
      throw RejectionError("mixture factors have inconsistent dimensions");
    }
  }
}

BipartiteDims SeparableMixture::dims() const {
  return {factors_.front().first.dim(), factors_.front().second.dim()};
}

DensityMatrix mix_separable(const SeparableMixture& mixture) {
  const auto dims = mixture.dims();
  ComplexMatrix rho = ComplexMatrix::Zero(dims.total(), dims.total());
  for (std::size_t j = 0; j < mixture.weights().size(); ++j) {
    const auto& [a, b] = mixture.factors()[j];
    rho += mixture.weights()[j] * kron(a.matrix(), b.matrix());
  }
  return DensityMatrix(rho, {dims.a, dims.b});
}

SeparableMixture random_separable_mixture(BipartiteDims dims, int terms, SplitMix64& rng) {
  if (terms < 1) throw RejectionError("mixture needs at least one term");
  std::vector<double> w(static_cast<std::size_t>(terms));
  for (auto& q : w) q = -std::log(1.0 - rng.uniform());  // Exp(1) -> flat Dirichlet
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& q : w) q /= total;
  // Renormalize to kill the last-ulp drift in the sum.
  w.back() = 1.0 - std::accumulate(w.begin(), w.end() - 1, 0.0);

  std::vector<std::pair<DensityMatrix, DensityMatrix>> factors;
  for (int j = 0; j < terms; ++j) {
    const int rank_a = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dims.a));
    const int rank_b = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(dims.b));
    auto a = random_state(dims.a, rank_a, rng);
    auto b = random_state(dims.b, rank_b, rng);
    factors.emplace_back(std::move(a), std::move(b));
  }
  return SeparableMixture(std::move(w), std::move(factors));
}

}  // namespace geamkit
