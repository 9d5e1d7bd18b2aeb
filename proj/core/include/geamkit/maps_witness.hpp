#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geamkit/geam.hpp"
#include "geamkit/states.hpp"

namespace geamkit {

/// How a rotation matrix was generated; kept for witness provenance.
struct RotationSpec {
  enum class Kind { Identity, Permutation, Exponential };

  Kind kind = Kind::Identity;
  std::vector<int> permutation;  // row i is e_{permutation[i]}
  RealMatrix generator;          // antisymmetric, before projection

  static RotationSpec identity() { return {}; }
  static RotationSpec permutation_of(std::vector<int> perm);
  static RotationSpec exponential_of(RealMatrix generator);
  /// Random antisymmetric generator with N(0, scale^2) entries.
  static RotationSpec random_exponential(int size, SplitMix64& rng, double scale = 1.0);
};

/// Real orthogonal M x M matrix whose rows and columns each sum to 1, i.e. a
/// rotation fixing the normalized all-ones vector.
class RotationMatrix {
 public:
  int size() const noexcept { return static_cast<int>(o_.rows()); }
  const RealMatrix& matrix() const noexcept { return o_; }
  const RotationSpec& spec() const noexcept { return spec_; }

 private:
  friend RotationMatrix make_rotation(int size, const RotationSpec& spec);
  RotationMatrix(RealMatrix o, RotationSpec spec) : o_(std::move(o)), spec_(std::move(spec)) {}

  RealMatrix o_;
  RotationSpec spec_;
};

/// Identity, permutation, or exp(Q G Q) with Q the projector off the all-ones
/// direction.
RotationMatrix make_rotation(int size, const RotationSpec& spec);

/// Phi_alpha[X] = sum_{k,l} O_{kl} P_{alpha,k} Tr(X P_{alpha,l}).
ComplexMatrix apply_phi_alpha(const Geam& geam, int alpha, const RotationMatrix& rotation,
                              const ComplexMatrix& x);

/// Phi = A Phi_0 + sum_{L < alpha <= K} Phi_alpha - sum_{alpha <= L} Phi_alpha
/// with A = d(2 C~_L - C~_K). L and K are prefix lengths (1-based counts).
class PositiveMapSpec {
 public:
  const Geam& geam() const noexcept { return geam_; }
  int negative_count() const noexcept { return negative_; }
  int total_count() const noexcept { return total_; }
  const std::vector<RotationMatrix>& rotations() const noexcept { return rotations_; }
  double A() const noexcept { return a_; }
  double S() const noexcept { return s_; }

 private:
  friend PositiveMapSpec build_map(Geam geam, int negative, int total,
                                   std::vector<RotationMatrix> rotations);
  PositiveMapSpec(Geam geam, int negative, int total, std::vector<RotationMatrix> rotations,
                  double a, double s)
      : geam_(std::move(geam)), negative_(negative), total_(total),
        rotations_(std::move(rotations)), a_(a), s_(s) {}

  Geam geam_;
  int negative_ = 0;
  int total_ = 0;
  std::vector<RotationMatrix> rotations_;
  double a_ = 0.0;
  double s_ = 0.0;
};

/// Requires a conical GEAM and 1 <= L <= K <= N; `rotations` holds one matrix
/// per frame alpha < K (extra entries are rejected).
PositiveMapSpec build_map(Geam geam, int negative, int total, std::vector<RotationMatrix> rotations);

/// build_map with identity rotations.
PositiveMapSpec build_map(Geam geam, int negative, int total);

ComplexMatrix apply_map(const PositiveMapSpec& spec, const ComplexMatrix& x);

/// Tr(Phi[P]^2) / [Tr Phi[P]]^2 for a rank-1 projector P; positivity of Phi on
/// P follows when this is <= 1/(d-1).
double mehta_ratio(const PositiveMapSpec& spec, const ComplexMatrix& projector);

struct WitnessProvenance {
  std::string geam_hash;
  int negative = 0;
  int total = 0;
  double A = 0.0;
  std::vector<RotationSpec> rotations;
};

/// Hermitian operator on C^dA (x) C^dB with provenance metadata.
class Witness {
 public:
  Witness(HermitianMatrix w, BipartiteDims dims, WitnessProvenance provenance = {});

  int dim() const noexcept { return w_.dim(); }
  BipartiteDims dims() const noexcept { return dims_; }
  const HermitianMatrix& hermitian() const noexcept { return w_; }
  const ComplexMatrix& matrix() const noexcept { return w_.matrix(); }
  const WitnessProvenance& provenance() const noexcept { return provenance_; }

 private:
  HermitianMatrix w_;
  BipartiteDims dims_;
  WitnessProvenance provenance_;
};

/// W = sum_{m,n} |m><n| (x) Phi[|m><n|], cross-checked against the closed form
/// (A/d) I (x) I + sum_{alpha > L} J_alpha - sum_{alpha <= L} J_alpha with
/// J_alpha = sum_{k,l} O_{kl} conj(P_{alpha,l}) (x) P_{alpha,k}.
/// Throws NumericalError if the two routes disagree beyond 1e-10.
Witness choi_witness(const PositiveMapSpec& spec);

/// Closed-form witness alone (the second route of choi_witness).
ComplexMatrix witness_closed_form(const PositiveMapSpec& spec);

/// Choi matrix alone (the first route of choi_witness).
ComplexMatrix witness_choi_form(const PositiveMapSpec& spec);

struct ProductMinimum {
  double value = 0.0;
  ComplexVector a;
  ComplexVector b;
  int best_restart = 0;
};

struct SeeSawOptions {
  int restarts = 32;
  std::uint64_t seed = 0x5eed5eedULL;
  double stagnation = 1e-10;
  int max_iterations = 2000;
};

/// Alternating minimization of <a (x) b| W |a (x) b> over unit vectors. The
/// returned value is an upper bound on the true product minimum. Restarts run
/// concurrently; each uses derive_seed(seed, restart).
ProductMinimum min_product_expectation(const HermitianMatrix& w, BipartiteDims dims,
                                       const SeeSawOptions& options = {});
ProductMinimum min_product_expectation(const Witness& w, const SeeSawOptions& options = {});

enum class Verdict { Entangled, Inconclusive };

struct Detection {
  double value = 0.0;
  Verdict verdict = Verdict::Inconclusive;
};

/// Tr(W rho); ENTANGLED when below -tolerance. Never reports "separable".
Detection detect(const Witness& w, const DensityMatrix& rho, double tolerance = 1e-10);

const char* to_string(Verdict v) noexcept;

}  // namespace geamkit
