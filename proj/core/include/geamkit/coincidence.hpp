#pragma once

#include <optional>
#include <vector>

#include "geamkit/geam.hpp"
#include "geamkit/states.hpp"

namespace geamkit {

/// Outcome probabilities p_{alpha,k} = Tr(P_{alpha,k} rho), grouped by frame.
class ProbabilityTable {
 public:
  /// Checks sum_k p_{alpha,k} = gamma_alpha, total 1, and p >= -1e-12.
  ProbabilityTable(std::vector<std::vector<double>> values, std::vector<double> gamma,
                   double tolerance = kStructuralTolerance);

  int frame_count() const noexcept { return static_cast<int>(values_.size()); }
  const std::vector<double>& frame(int alpha) const { return values_.at(static_cast<std::size_t>(alpha)); }
  const std::vector<std::vector<double>>& values() const noexcept { return values_; }
  const std::vector<double>& gamma() const noexcept { return gamma_; }

  /// Probabilities flattened in (alpha, k) order.
  RealVector flatten() const;

 private:
  std::vector<std::vector<double>> values_;
  std::vector<double> gamma_;
};

ProbabilityTable probabilities(const Geam& geam, const DensityMatrix& rho);

/// C_L = sum_{alpha <= L} sum_k p_{alpha,k}^2 for 1 <= L <= N.
double partial_ioc(const ProbabilityTable& table, int prefix);

/// Full index of coincidence C = C_N.
double ioc(const ProbabilityTable& table);

struct CoincidenceBound {
  int prefix = 0;
  double mu = 0.0;           // mu_L
  double bound_state = 0.0;  // S (purity - 1/d) + mu_L
  double bound_pure = 0.0;   // (d-1)/d S + mu_L
  std::optional<double> value;  // C_L when evaluated on a state
};

/// Purity-linear upper bounds on C_L. Requires a conical GEAM (PremiseError
/// otherwise) and 1/d <= purity <= 1.
CoincidenceBound ioc_bounds(const Geam& geam, int prefix, double purity);

/// ioc_bounds at the state's purity, with C_L filled in.
CoincidenceBound ioc_bounds(const Geam& geam, int prefix, const DensityMatrix& rho);

/// Maximal partial index of coincidence over pure states: (d-1)/d S + mu_L.
double max_partial_ioc(const Geam& geam, int prefix);
inline double max_ioc(const Geam& geam) { return max_partial_ioc(geam, geam.frame_count()); }

/// Coefficients r_{alpha,k} with rho = I/d + sum r_{alpha,k} H_{alpha,k},
/// in the gauge sum_k r_{alpha,k} = 0. Needs H-operator provenance
/// (UnsupportedError otherwise).
std::vector<std::vector<double>> decompose_state(const Geam& geam, const DensityMatrix& rho);

/// I/d + sum r_{alpha,k} H_{alpha,k}.
ComplexMatrix reconstruct_state(const Geam& geam, const std::vector<std::vector<double>>& coefficients);

}  // namespace geamkit
