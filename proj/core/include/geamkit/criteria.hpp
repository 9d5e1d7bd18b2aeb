#pragma once

#include <vector>

#include "geamkit/geam.hpp"
#include "geamkit/states.hpp"

namespace geamkit {

inline constexpr double kCriterionTolerance = 1e-9;

/// P_{alpha,k; beta,l} = Tr[rho (P^A_{alpha,k} (x) P^B_{beta,l})].
class CorrelationMatrix {
 public:
  CorrelationMatrix(RealMatrix values, std::vector<int> sizes_a, std::vector<int> sizes_b);

  const RealMatrix& values() const noexcept { return values_; }
  const std::vector<int>& frame_sizes_a() const noexcept { return sizes_a_; }
  const std::vector<int>& frame_sizes_b() const noexcept { return sizes_b_; }
  bool is_square_layout() const noexcept { return sizes_a_ == sizes_b_; }

 private:
  RealMatrix values_;
  std::vector<int> sizes_a_;
  std::vector<int> sizes_b_;
};

/// `rho` must factor as dim(A) x dim(B); an untagged state of the right
/// dimension is interpreted that way.
CorrelationMatrix correlation_matrix(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho);

enum class Criterion { Trace, TraceNorm, Enhanced };

const char* to_string(Criterion c) noexcept;

struct CriterionReport {
  Criterion criterion = Criterion::Trace;
  double lhs = 0.0;
  double bound = 0.0;
  bool violated = false;  // lhs > bound + tolerance
  double tolerance = kCriterionTolerance;
};

/// Tr P <= (C~^A + C~^B)/2. Needs equal frame layouts on both sides.
CriterionReport trace_criterion(const CorrelationMatrix& p, const Geam& geam_a, const Geam& geam_b,
                                double tolerance = kCriterionTolerance);

/// ||P||_tr <= sqrt(C~^A C~^B).
CriterionReport trace_norm_criterion(const CorrelationMatrix& p, const Geam& geam_a,
                                     const Geam& geam_b, double tolerance = kCriterionTolerance);

/// ||R||_tr <= sqrt(C~^A - C^A(rho_A)) sqrt(C~^B - C^B(rho_B)) with
/// R = P(rho) - p^A(rho_A) p^B(rho_B)^T.
CriterionReport enhanced_criterion(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho,
                                   double tolerance = kCriterionTolerance);

/// The matrix R of the enhanced criterion.
RealMatrix enhanced_correlation(const Geam& geam_a, const Geam& geam_b, const DensityMatrix& rho);

}  // namespace geamkit
