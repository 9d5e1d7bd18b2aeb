#include <gtest/gtest.h>

#include <cmath>

#include "geamkit/error.hpp"
#include "geamkit/maps_witness.hpp"
#include "geamkit/random.hpp"
#include "geamkit/states.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"
#include "support/reference.hpp"

namespace geamkit {
namespace {

using testing::MatrixNear;

ComplexMatrix ket_projector(int d, int k) {
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(k, k) = 1.0;
  return m;
}

std::vector<RotationMatrix> identity_rotations(const Geam& g, int k) {
  std::vector<RotationMatrix> out;
  for (int alpha = 0; alpha < k; ++alpha) out.push_back(make_rotation(g.frame(alpha).size, RotationSpec::identity()));
  return out;
}

std::vector<int> random_permutation(int m, SplitMix64& rng) {
  std::vector<int> p(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = i;
  for (int i = m - 1; i > 0; --i) std::swap(p[static_cast<std::size_t>(i)], p[rng() % static_cast<std::uint64_t>(i + 1)]);
  return p;
}

std::vector<RotationMatrix> random_rotations(const Geam& g, int k, SplitMix64& rng) {
  std::vector<RotationMatrix> out;
  for (int alpha = 0; alpha < k; ++alpha) {
    const int m = g.frame(alpha).size;
    switch (rng() % 3) {
      case 0: out.push_back(make_rotation(m, RotationSpec::identity())); break;
      case 1: out.push_back(make_rotation(m, RotationSpec::permutation_of(random_permutation(m, rng)))); break;
      default: out.push_back(make_rotation(m, RotationSpec::random_exponential(m, rng))); break;
    }
  }
  return out;
}

std::vector<Geam> reference_geams() {
  return {testing::qubit_reference_geam(), testing::sic_type_geam(), testing::qutrit_reference_geam(),
          testing::qutrit_two_frame_geam()};
}

void expect_rotation_invariants(const RotationMatrix& o) {
  const int m = o.size();
  const RealMatrix& r = o.matrix();
  EXPECT_LE(max_abs(RealMatrix(r.transpose() * r - RealMatrix::Identity(m, m))), 1e-10);
  for (int i = 0; i < m; ++i) {
    EXPECT_NEAR(r.row(i).sum(), 1.0, 1e-10);
    EXPECT_NEAR(r.col(i).sum(), 1.0, 1e-10);
  }
}

TEST(Rotation, Identity) {
  const auto o = make_rotation(4, RotationSpec::identity());
  EXPECT_EQ(o.matrix(), RealMatrix(RealMatrix::Identity(4, 4)));
}

TEST(Rotation, CyclicPermutation) {
  const auto o = make_rotation(3, RotationSpec::permutation_of({1, 2, 0}));
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected(0, 1) = expected(1, 2) = expected(2, 0) = 1.0;
  EXPECT_EQ(o.matrix(), expected);
  expect_rotation_invariants(o);
}

TEST(Rotation, PropertyRandomExponential) {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 1 + static_cast<int>(rng() % 9);
    const auto o = make_rotation(m, RotationSpec::random_exponential(m, rng, 0.5 + 3 * rng.uniform()));
    expect_rotation_invariants(o);
  }
}

TEST(Rotation, Rejections) {
  EXPECT_THROW(make_rotation(3, RotationSpec::permutation_of({0, 0, 1})), RejectionError);
  EXPECT_THROW(make_rotation(3, RotationSpec::permutation_of({0, 1})), RejectionError);
  RealMatrix g = RealMatrix::Zero(3, 3);
  g(0, 1) = 1.0;
  EXPECT_THROW(make_rotation(3, RotationSpec::exponential_of(g)), RejectionError);
  EXPECT_THROW(make_rotation(0, RotationSpec::identity()), RejectionError);
}

TEST(PhiAlpha, IdentityInput) {
  const Geam g = testing::qubit_reference_geam();
  const auto o = make_rotation(2, RotationSpec::identity());
  for (int alpha = 0; alpha < 3; ++alpha)
    EXPECT_TRUE(MatrixNear(apply_phi_alpha(g, alpha, o, ComplexMatrix::Identity(2, 2)),
                           ComplexMatrix::Identity(2, 2) / 9.0, 1e-15));
}

TEST(PhiAlpha, ZFrameOnKetZero) {
  const Geam g = testing::qubit_reference_geam();
  const auto o = make_rotation(2, RotationSpec::identity());
  EXPECT_TRUE(MatrixNear(apply_phi_alpha(g, 2, o, ket_projector(2, 0)), ket_projector(2, 0) / 9.0, 1e-15));
  EXPECT_TRUE(MatrixNear(apply_phi_alpha(g, 2, o, ComplexMatrix::Zero(2, 2)), ComplexMatrix::Zero(2, 2), 0.0));
}

TEST(PhiAlpha, SizeMismatch) {
  const Geam g = testing::qubit_reference_geam();
  EXPECT_THROW(apply_phi_alpha(g, 0, make_rotation(3, RotationSpec::identity()), ComplexMatrix::Identity(2, 2)),
               RejectionError);
  EXPECT_THROW(apply_phi_alpha(g, 0, make_rotation(2, RotationSpec::identity()), ComplexMatrix::Identity(3, 3)),
               RejectionError);
}

TEST(PhiAlpha, PropertyTraceScalingIndependentOfRotation) {
  SplitMix64 rng(41);
  for (const auto& g : reference_geams()) {
    const int d = g.dim();
    for (int trial = 0; trial < 20; ++trial) {
      ComplexMatrix x(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) x(i, j) = rng.complex_gaussian();
      for (int alpha = 0; alpha < g.frame_count(); ++alpha) {
        const auto& fr = g.frame(alpha);
        const auto o = make_rotation(fr.size, RotationSpec::random_exponential(fr.size, rng));
        const Complex tr = apply_phi_alpha(g, alpha, o, x).trace();
        EXPECT_NEAR(std::abs(tr - fr.a * fr.gamma * x.trace()), 0.0, 1e-10);
      }
    }
  }
}

TEST(BuildMap, QubitReferenceConstants) {
  const Geam g = testing::qubit_reference_geam();
  EXPECT_NEAR(build_map(g, 3, 3).A(), 4.0 / 9, 1e-15);
  EXPECT_NEAR(build_map(g, 1, 3).A(), 0.0, 1e-15);
  EXPECT_THROW(build_map(g, 2, 1), RejectionError);
  EXPECT_THROW(build_map(g, 0, 1), RejectionError);
  EXPECT_THROW(build_map(g, 1, 4), RejectionError);
  EXPECT_THROW(build_map(g, 1, 3, identity_rotations(g, 2)), RejectionError);
}

TEST(BuildMap, RejectsNonConical) {
  auto raw = testing::explicit_qubit_mub_effects();
  ComplexMatrix sz(2, 2);
  sz << 1, 0, 0, -1;
  std::vector<std::vector<HermitianMatrix>> frames;
  for (int alpha = 0; alpha < 2; ++alpha) {
    frames.emplace_back();
    for (const auto& m : raw[static_cast<std::size_t>(alpha)]) frames.back().emplace_back(m);
  }
  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / 6.0;
  frames.push_back({HermitianMatrix(ComplexMatrix(half - sz / 12.0)), HermitianMatrix(ComplexMatrix(half + sz / 12.0))});
  EXPECT_THROW(build_map(validate_geam(frames), 1, 1), PremiseError);
}

TEST(BuildMap, PropertyBothFormsOfA) {
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    const int d = g.dim();
    const double s = *g.design_constant();
    for (int l = 1; l <= n; ++l)
      for (int k = l; k <= n; ++k) {
        const double cl = (d - 1.0) / d * s + g.mu(l);
        const double ck = (d - 1.0) / d * s + g.mu(k);
        const double a = build_map(g, l, k).A();
        EXPECT_NEAR(a, d * (2 * cl - ck), 1e-12);
        EXPECT_NEAR(a, (d - 1) * s - d * (g.mu(k) - 2 * g.mu(l)), 1e-12);
      }
  }
}

TEST(ApplyMap, QubitReductionExamples) {
  const auto spec = build_map(testing::qubit_reference_geam(), 3, 3);
  EXPECT_TRUE(MatrixNear(apply_map(spec, ket_projector(2, 0)), ket_projector(2, 1) / 9.0, 1e-15));
  EXPECT_TRUE(MatrixNear(apply_map(spec, ComplexMatrix::Identity(2, 2)), ComplexMatrix::Identity(2, 2) / 9.0, 1e-15));
  EXPECT_TRUE(MatrixNear(apply_map(spec, ComplexMatrix::Zero(2, 2)), ComplexMatrix::Zero(2, 2), 0.0));
}

TEST(ApplyMap, AgreesWithExplicitMubSum) {
  // Identity rotations, L = K = 3: Phi[X] = A Tr(X) I/d - sum_{alpha,k} P_k Tr(X P_k).
  const auto spec = build_map(testing::qubit_reference_geam(), 3, 3);
  SplitMix64 rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix x(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) x(i, j) = rng.complex_gaussian();
    ComplexMatrix expected = spec.A() * x.trace() * ComplexMatrix::Identity(2, 2) / 2.0;
    for (const auto& fr : testing::explicit_qubit_mub_effects())
      for (const auto& p : fr) expected -= p * (x * p).trace();
    EXPECT_TRUE(MatrixNear(apply_map(spec, x), expected, 1e-14));
  }
}

TEST(ApplyMap, PropertyTraceFormula) {
  SplitMix64 rng(51);
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    const int d = g.dim();
    for (int l = 1; l <= n; ++l)
      for (int k = l; k <= n; ++k) {
        const auto spec = build_map(g, l, k, random_rotations(g, k, rng));
        ComplexMatrix x(d, d);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) x(i, j) = rng.complex_gaussian();
        const double factor = spec.A() + d * g.mu(k) - 2 * d * g.mu(l);
        EXPECT_NEAR(std::abs(apply_map(spec, x).trace() - factor * x.trace()), 0.0, 1e-10);
        EXPECT_NEAR(factor, (d - 1) * *g.design_constant(), 1e-12);
      }
  }
}

TEST(Mehta, ReductionMapSaturates) {
  const auto spec = build_map(testing::qubit_reference_geam(), 3, 3);
  EXPECT_NEAR(mehta_ratio(spec, ket_projector(2, 0)), 1.0, 1e-12);
}

TEST(Mehta, RejectsNonRankOne) {
  const auto spec = build_map(testing::qubit_reference_geam(), 3, 3);
  EXPECT_THROW(mehta_ratio(spec, ComplexMatrix::Identity(2, 2) / 2.0), RejectionError);
}

TEST(Mehta, PropertyBoundOnRandomPureStates) {
  SplitMix64 rng(61);
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    const int d = g.dim();
    for (int l = 1; l <= n; ++l)
      for (int k = l; k <= n; ++k) {
        std::vector<RotationMatrix> rots;
        for (int alpha = 0; alpha < k; ++alpha) {
          const int m = g.frame(alpha).size;
          rots.push_back(make_rotation(m, RotationSpec::permutation_of(random_permutation(m, rng))));
        }
        const auto spec = build_map(g, l, k, rots);
        for (int i = 0; i < 100; ++i) {
          const ComplexVector v = random_unit_vector(d, rng);
          EXPECT_LE(mehta_ratio(spec, v * v.adjoint()), 1.0 / (d - 1) + 1e-9);
        }
      }
  }
}

TEST(Witness, ReductionWitnessQubit) {
  const auto w = choi_witness(build_map(testing::qubit_reference_geam(), 3, 3));
  const ComplexMatrix expected = (ComplexMatrix::Identity(4, 4) - 2.0 * testing::phi_plus_oracle(2)) / 9.0;
  EXPECT_TRUE(MatrixNear(w.matrix(), expected, 1e-12));
  const auto ev = testing::hermitian_eigenvalues_oracle(w.matrix());
  const double expected_ev[] = {-1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[static_cast<std::size_t>(i)], expected_ev[i], 1e-12);
  EXPECT_EQ(w.provenance().negative, 3);
  EXPECT_EQ(w.provenance().total, 3);
  EXPECT_EQ(w.provenance().geam_hash, geam_hash(testing::qubit_reference_geam()));
}

TEST(Witness, ReductionWitnessSicType) {
  const auto w = choi_witness(build_map(testing::sic_type_geam(), 1, 1));
  const ComplexMatrix expected = (ComplexMatrix::Identity(4, 4) - 2.0 * testing::phi_plus_oracle(2)) / 6.0;
  EXPECT_TRUE(MatrixNear(w.matrix(), expected, 1e-12));
}

TEST(Witness, ReductionWitnessQutrit) {
  const Geam g = testing::qutrit_reference_geam();
  const auto w = choi_witness(build_map(g, 4, 4));
  const double s = *g.design_constant();
  const ComplexMatrix expected = s * (ComplexMatrix::Identity(9, 9) - 3.0 * testing::phi_plus_oracle(3));
  EXPECT_TRUE(MatrixNear(w.matrix(), expected, 1e-12));
}

TEST(Witness, PropertyTwoRoutesAgree) {
  SplitMix64 rng(71);
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    for (int trial = 0; trial < 10; ++trial) {
      const int k = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      const int l = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(k));
      const auto spec = build_map(g, l, k, random_rotations(g, k, rng));
      EXPECT_TRUE(MatrixNear(witness_choi_form(spec), witness_closed_form(spec), 1e-10));
    }
  }
}

TEST(SeeSaw, SimpleOperators) {
  const BipartiteDims dims{2, 2};
  EXPECT_NEAR(min_product_expectation(HermitianMatrix::identity(4), dims).value, 1.0, 1e-12);
  const HermitianMatrix neg(ComplexMatrix(-testing::phi_plus_oracle(2)));
  EXPECT_NEAR(min_product_expectation(neg, dims).value, -0.5, 1e-9);
}

TEST(SeeSaw, ReductionWitnessBoundary) {
  const auto w = choi_witness(build_map(testing::qubit_reference_geam(), 3, 3));
  const auto m = min_product_expectation(w);
  EXPECT_NEAR(m.value, 0.0, 1e-7);
  // The returned vectors realise the reported value.
  const ComplexVector ab = kron(m.a, m.b);
  EXPECT_NEAR((ab.adjoint() * w.matrix() * ab)(0, 0).real(), m.value, 1e-12);
}

TEST(SeeSaw, DeterministicForSeed) {
  const auto w = choi_witness(build_map(testing::qutrit_reference_geam(), 2, 4));
  const auto a = min_product_expectation(w);
  const auto b = min_product_expectation(w);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.best_restart, b.best_restart);
}

TEST(SeeSaw, RejectsBadArguments) {
  SeeSawOptions opts;
  opts.restarts = 0;
  EXPECT_THROW(min_product_expectation(HermitianMatrix::identity(4), {2, 2}, opts), RejectionError);
  EXPECT_THROW(min_product_expectation(HermitianMatrix::identity(4), {2, 3}), RejectionError);
}

TEST(SeeSaw, PropertyNoWorseThanRandomSampling) {
  SplitMix64 rng(81);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix g(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) g(i, j) = rng.complex_gaussian();
    const HermitianMatrix h(ComplexMatrix(g + g.adjoint()));
    const double seesaw = min_product_expectation(h, {2, 3}).value;
    double sampled = 1e300;
    for (int i = 0; i < 2000; ++i) {
      const ComplexVector v = kron(random_unit_vector(2, rng), random_unit_vector(3, rng));
      sampled = std::min(sampled, (v.adjoint() * h.matrix() * v)(0, 0).real());
    }
    EXPECT_LE(seesaw, sampled + 1e-9);
    EXPECT_GE(seesaw, min_eigenvalue(h) - 1e-9);
  }
}

TEST(SeeSaw, PropertyConstructedWitnessesBlockPositive) {
  SplitMix64 rng(91);
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    for (int l = 1; l <= n; ++l)
      for (int k = l; k <= n; ++k) {
        const auto w = choi_witness(build_map(g, l, k, random_rotations(g, k, rng)));
        EXPECT_GE(min_product_expectation(w).value, -1e-7) << "L=" << l << " K=" << k;
      }
  }
}

TEST(Detect, MaxEntangledQubit) {
  const auto w = choi_witness(build_map(testing::qubit_reference_geam(), 3, 3));
  const auto det = detect(w, canonical_state(StateKind::MaxEntangled, 2));
  EXPECT_NEAR(det.value, -1.0 / 9, 1e-15);
  EXPECT_EQ(det.verdict, Verdict::Entangled);
  EXPECT_STREQ(to_string(det.verdict), "ENTANGLED");
}

TEST(Detect, IsotropicLinearFormula) {
  const auto w = choi_witness(build_map(testing::qubit_reference_geam(), 3, 3));
  for (double p : {0.0, 0.2, 1.0 / 3, 0.5, 0.9}) {
    const auto det = detect(w, canonical_state(StateKind::Isotropic, 2, p));
    EXPECT_NEAR(det.value, (1.0 - 2 * p - (1 - p) / 2) / 9.0, 1e-15);
  }
}

TEST(Detect, MaximallyMixedInconclusive) {
  for (const auto& g : reference_geams()) {
    const int n = g.frame_count();
    const auto w = choi_witness(build_map(g, 1, n));
    const auto det = detect(w, canonical_state(StateKind::MaxMixed, g.dim()));
    EXPECT_GE(det.value, 0.0);
    EXPECT_EQ(det.verdict, Verdict::Inconclusive);
  }
}

TEST(Detect, DimensionMismatch) {
  const auto w = choi_witness(build_map(testing::qubit_reference_geam(), 3, 3));
  EXPECT_THROW(detect(w, canonical_state(StateKind::MaxMixed, 3)), RejectionError);
}

TEST(Detect, PropertySeparableMixturesNeverFlagged) {
  SplitMix64 rng(101);
  const std::vector<Geam> geams{testing::qubit_reference_geam(), testing::qutrit_reference_geam()};
  for (const auto& g : geams) {
    const int n = g.frame_count();
    std::vector<Witness> witnesses;
    for (int l = 1; l <= n; ++l) witnesses.push_back(choi_witness(build_map(g, l, n, random_rotations(g, n, rng))));
    for (int i = 0; i < 200; ++i) {
      const int terms = 1 + static_cast<int>(rng() % 5);
      const auto rho = mix_separable(random_separable_mixture({g.dim(), g.dim()}, terms, rng));
      for (const auto& w : witnesses) {
        const auto det = detect(w, rho);
        EXPECT_GE(det.value, -1e-9);
        EXPECT_EQ(det.verdict, Verdict::Inconclusive);
      }
    }
  }
}

TEST(Stress, EightDimensionalPipeline) {
  // d + 1 frames of size d satisfy sum M = d^2 + N - 1.
  const int d = 8;
  const auto partition = partition_basis(gell_mann_basis(d), std::vector<int>(d + 1, d));
  const auto gamma = uniform_weights(d + 1);
  const Geam g = build_geam(partition, gamma, max_feasible_S(partition, gamma));
  EXPECT_TRUE(check_conical_design(g).is_conical);
  SplitMix64 rng(111);
  const auto spec = build_map(g, 3, 7, random_rotations(g, 7, rng));
  EXPECT_TRUE(MatrixNear(witness_choi_form(spec), witness_closed_form(spec), 1e-10));
  for (int i = 0; i < 50; ++i) {
    const ComplexVector v = random_unit_vector(d, rng);
    EXPECT_LE(mehta_ratio(spec, v * v.adjoint()), 1.0 / (d - 1) + 1e-9);
  }
  SeeSawOptions opts;
  opts.restarts = 8;
  EXPECT_GE(min_product_expectation(choi_witness(spec), opts).value, -1e-7);
}

}  // namespace
}  // namespace geamkit
