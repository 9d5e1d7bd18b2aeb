#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "geamkit/linalg.hpp"
#include "geamkit/operator_basis.hpp"

namespace geamkit {

inline constexpr double kStructuralTolerance = 1e-10;

/// One generalized equiangular tight frame {P_{alpha,k}}.
struct GeamFrame {
  int size = 0;        // M_alpha
  double gamma = 0.0;  // sum_k P_{alpha,k} = gamma I
  double a = 0.0;      // Tr P
  double b = 0.0;      // Tr P^2 = b a^2
  double c = 0.0;      // Tr P_k P_l = c a^2, k != l
  int sign = 0;        // sign of tau; 0 when unknown
  std::vector<HermitianMatrix> operators;

  /// a^2 (b - c); equal across frames for a conical 2-design.
  double design_constant() const noexcept { return a * a * (b - c); }
};

/// H-operators and tau_alpha for a GEAM assembled from a basis partition.
struct HOperatorProvenance {
  std::vector<std::vector<HermitianMatrix>> h;
  std::vector<double> tau;
};

/// Validated generalized equiangular measurement. Instances only come out of
/// validate_geam / build_geam, so every Geam satisfies the defining relations.
class Geam {
 public:
  int dim() const noexcept { return dim_; }
  int frame_count() const noexcept { return static_cast<int>(frames_.size()); }
  const std::vector<GeamFrame>& frames() const noexcept { return frames_; }
  const GeamFrame& frame(int alpha) const { return frames_.at(static_cast<std::size_t>(alpha)); }
  std::vector<int> frame_sizes() const;
  int outcome_count() const;

  double f() const noexcept { return 1.0 / dim_; }

  /// Common a^2(b - c) when it agrees across frames within the validation
  /// tolerance; empty otherwise.
  const std::optional<double>& design_constant() const noexcept { return design_constant_; }

  /// mu_L = (1/d) sum_{alpha <= L} a_alpha gamma_alpha, 0 <= L <= N.
  double mu(int prefix) const;

  const std::optional<HOperatorProvenance>& h_provenance() const noexcept { return provenance_; }

 private:
  friend struct GeamAccess;

  int dim_ = 0;
  std::vector<GeamFrame> frames_;
  std::optional<double> design_constant_;
  std::optional<HOperatorProvenance> provenance_;
};

struct ValidateOptions {
  double tolerance = kStructuralTolerance;
  /// Optional per-frame signs to record (not inferable from the operators).
  std::vector<int> signs;
};

/// Infers (gamma, a, b, c, f) from the operators and checks every defining
/// relation, the purity bounds, and positivity. Throws ValidationError listing
/// all violations.
Geam validate_geam(const std::vector<std::vector<HermitianMatrix>>& frames,
                   const ValidateOptions& options = {});

/// H_{alpha,k} for frame alpha (0-based) of the partition.
std::vector<HermitianMatrix> build_h_operators(const BasisPartition& partition, int alpha);

/// Per-frame upper limits on S: min{d g^2/M, (d-1)/(M-1) d g^2/M}.
std::vector<double> design_caps(int d, std::span<const int> sizes, std::span<const double> gamma);

std::vector<double> uniform_weights(int n);

/// P_{alpha,k} = (a/d) I + tau H_{alpha,k} with a = d gamma/M and
/// tau = s sqrt(S / (M (sqrt(M)+1)^2)). Empty `signs` means all +1.
///
/// Throws RejectionError when S is outside (0, cap] or gamma is not a
/// probability vector, PositivityError when an effect has a negative
/// eigenvalue below -tolerance.
Geam build_geam(const BasisPartition& partition, std::span<const double> gamma, double S,
                std::span<const int> signs = {}, double tolerance = kStructuralTolerance);

struct DesignCertificate {
  bool is_conical = false;
  bool s_constant = false;
  double S = 0.0;            // mean of a^2(b-c) over frames
  double kappa_plus = 0.0;   // fitted coefficient of I (x) I
  double kappa_minus = 0.0;  // fitted coefficient of F
  double residual = 0.0;     // max |sum P(x)P - kappa_+ I - kappa_- F|
  double mu = 0.0;           // mu_N
};

/// Checks the S-constancy premise and the explicit d^2 x d^2 identity
/// sum P (x) P = kappa_+ I + kappa_- F, with kappa_+ = mu_N - S/d, kappa_- = S.
DesignCertificate check_conical_design(const Geam& geam, double tolerance = kStructuralTolerance);

/// FNV-1a 64 digest (16 hex chars) of the dimension, frame sizes, and the
/// IEEE-754 bytes of every effect entry.
std::string geam_hash(const Geam& geam);

/// Largest S <= cap for which build_geam yields PSD effects (bisection to
/// relative precision 1e-6). Throws InfeasibleError if none exists.
double max_feasible_S(const BasisPartition& partition, std::span<const double> gamma,
                      std::span<const int> signs = {});

}  // namespace geamkit
