#include <gtest/gtest.h>

#include <cmath>

#include "geamkit/error.hpp"
#include "geamkit/linalg.hpp"
#include "geamkit/random.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

namespace geamkit {
namespace {

using testing::MatrixNear;

ComplexMatrix random_matrix(int r, int c, SplitMix64& rng) {
  ComplexMatrix m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.complex_gaussian();
  return m;
}

HermitianMatrix random_hermitian(int n, SplitMix64& rng) {
  const ComplexMatrix g = random_matrix(n, n, rng);
  return HermitianMatrix(ComplexMatrix(g + g.adjoint()));
}

TEST(HermitianMatrix, RejectsNonHermitian) {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 1;
  EXPECT_THROW(HermitianMatrix{m}, RejectionError);
}

TEST(HermitianMatrix, RejectsNonFinite) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 0) = std::nan("");
  EXPECT_THROW(HermitianMatrix{m}, RejectionError);
}

TEST(HermitianMatrix, SymmetrizesSmallDrift) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = Complex(1e-13, 0);
  const HermitianMatrix h(m);
  EXPECT_EQ(h.matrix()(0, 1), h.matrix()(1, 0));
}

TEST(HermEig, Identity) {
  const auto e = herm_eig(HermitianMatrix::identity(2));
  EXPECT_NEAR(e.values(0), 1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(HermEig, PauliZ) {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  const auto e = herm_eig(HermitianMatrix(z));
  EXPECT_NEAR(e.values(0), -1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(HermEig, ReductionWitnessSpectrumMatchesJacobiOracle) {
  const ComplexMatrix w = (ComplexMatrix::Identity(4, 4) - 2.0 * testing::phi_plus_oracle(2)) / 9.0;
  const auto e = herm_eig(HermitianMatrix(w));
  const auto oracle = testing::jacobi_eigenvalues(w.real());
  const double expected[] = {-1.0 / 9, 1.0 / 9, 1.0 / 9, 1.0 / 9};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(e.values(i), expected[i], 1e-14);
    EXPECT_NEAR(oracle[static_cast<std::size_t>(i)], expected[i], 1e-14);
  }
}

TEST(HermEig, PropertyReconstructionAndOrthonormality) {
  SplitMix64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const HermitianMatrix h = random_hermitian(n, rng);
    const auto e = herm_eig(h);
    for (int i = 1; i < n; ++i) EXPECT_LE(e.values(i - 1), e.values(i));
    const ComplexMatrix recon = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    EXPECT_TRUE(MatrixNear(recon, h.matrix(), 1e-10)) << "n=" << n;
    EXPECT_TRUE(MatrixNear(e.vectors.adjoint() * e.vectors, ComplexMatrix::Identity(n, n), 1e-10));
  }
}

TEST(HermEig, AgreesWithRealEmbeddingOracle) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianMatrix h = random_hermitian(5, rng);
    const auto e = herm_eig(h);
    const auto oracle = testing::hermitian_eigenvalues_oracle(h.matrix());
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(e.values(i), oracle[static_cast<std::size_t>(i)], 1e-10);
  }
}

TEST(TraceNorm, ZeroMatrix) { EXPECT_EQ(trace_norm(ComplexMatrix(ComplexMatrix::Zero(3, 3))), 0.0); }

TEST(TraceNorm, Diagonal) {
  RealMatrix m = RealMatrix::Zero(2, 2);
  m(0, 0) = 3;
  m(1, 1) = -4;
  EXPECT_NEAR(trace_norm(m), 7.0, 1e-14);
}

TEST(TraceNorm, RejectsNonFinite) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(1, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(trace_norm(m), RejectionError);
}

TEST(TraceNorm, PropertyUnitaryInvariance) {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const ComplexMatrix m = random_matrix(n, n, rng);
    const ComplexMatrix u = random_unitary(n, rng);
    const ComplexMatrix v = random_unitary(n, rng);
    EXPECT_NEAR(trace_norm(ComplexMatrix(u * m * v)), trace_norm(m), 1e-9);
  }
}

TEST(TraceNorm, RectangularAgreesWithGramOracle) {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    RealMatrix m(4, 6);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) m(i, j) = rng.gaussian();
    EXPECT_NEAR(trace_norm(m), testing::trace_norm_oracle(m), 1e-10);
  }
}

TEST(PartialTrace, ProductStateMarginal) {
  SplitMix64 rng(11);
  ComplexMatrix a = random_matrix(2, 2, rng);
  a = a * a.adjoint();
  a /= a.trace();
  ComplexMatrix b = random_matrix(3, 3, rng);
  b = b * b.adjoint();
  b /= b.trace();
  EXPECT_TRUE(MatrixNear(partial_trace(kron(a, b), {2, 3}, Subsystem::A), a, 1e-14));
  EXPECT_TRUE(MatrixNear(partial_trace(kron(a, b), {2, 3}, Subsystem::B), b, 1e-14));
}

TEST(PartialTrace, MaxEntangledMarginalIsMaximallyMixed) {
  const ComplexMatrix ra = partial_trace(max_entangled_projector(2), {2, 2}, Subsystem::A);
  EXPECT_TRUE(MatrixNear(ra, ComplexMatrix::Identity(2, 2) / 2.0, 1e-15));
}

TEST(PartialTrace, IsotropicQutritKeepB) {
  const ComplexMatrix iso = 0.5 * testing::phi_plus_oracle(3) + 0.5 * ComplexMatrix::Identity(9, 9) / 9.0;
  const ComplexMatrix rb = partial_trace(iso, {3, 3}, Subsystem::B);
  EXPECT_TRUE(MatrixNear(rb, ComplexMatrix::Identity(3, 3) / 3.0, 1e-15));
  EXPECT_TRUE(MatrixNear(rb, testing::partial_trace_oracle(iso, 3, 3, false), 1e-15));
}

TEST(PartialTrace, DimensionMismatch) {
  EXPECT_THROW(partial_trace(ComplexMatrix::Identity(5, 5), {2, 3}, Subsystem::A), RejectionError);
}

TEST(PartialTrace, PropertyAgreesWithOracleAndPreservesTrace) {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const int da = 1 + static_cast<int>(rng() % 4);
    const int db = 1 + static_cast<int>(rng() % 4);
    const ComplexMatrix m = random_matrix(da * db, da * db, rng);
    for (auto keep : {Subsystem::A, Subsystem::B}) {
      const ComplexMatrix r = partial_trace(m, {da, db}, keep);
      EXPECT_TRUE(MatrixNear(r, testing::partial_trace_oracle(m, da, db, keep == Subsystem::A), 1e-12));
      EXPECT_NEAR(std::abs(r.trace() - m.trace()), 0.0, 1e-12);
    }
  }
}

TEST(PartialTrace, PropertyKronScaling) {
  SplitMix64 rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix a = random_matrix(3, 3, rng);
    const ComplexMatrix b = random_matrix(2, 2, rng);
    EXPECT_TRUE(MatrixNear(partial_trace(kron(a, b), {3, 2}, Subsystem::A), b.trace() * a, 1e-11));
  }
}

TEST(PartialTranspose, FlipGivesScaledMaxEntangled) {
  for (int d = 2; d <= 4; ++d) {
    const ComplexMatrix pt = partial_transpose(flip_operator(d), {d, d}, Subsystem::B);
    EXPECT_TRUE(MatrixNear(pt, d * max_entangled_projector(d), 1e-15));
  }
}

TEST(Flip, QubitSwapMatrix) {
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(1, 2) = expected(2, 1) = expected(3, 3) = 1.0;
  EXPECT_TRUE(MatrixNear(flip_operator(2), expected, 0.0));
}

TEST(Flip, TraceEqualsDimension) {
  EXPECT_NEAR(flip_operator(3).trace().real(), 3.0, 0.0);
}

TEST(Flip, SwapsBasisKets) {
  ComplexVector v01 = ComplexVector::Zero(4);
  v01(1) = 1.0;
  const ComplexVector out = flip_operator(2) * v01;
  EXPECT_EQ(out(2), Complex(1.0));
  EXPECT_NEAR(out.norm(), 1.0, 0.0);
}

TEST(Flip, RejectsSmallDimension) {
  EXPECT_THROW(flip_operator(1), RejectionError);
  EXPECT_THROW(flip_operator(0), RejectionError);
}

TEST(Flip, PropertyConjugationSwapsFactors) {
  SplitMix64 rng(505);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    const ComplexMatrix a = random_matrix(d, d, rng);
    const ComplexMatrix b = random_matrix(d, d, rng);
    const ComplexMatrix f = flip_operator(d);
    EXPECT_TRUE(MatrixNear(f * kron(a, b) * f, kron(b, a), 1e-11));
    EXPECT_TRUE(MatrixNear(f * f, ComplexMatrix::Identity(d * d, d * d), 0.0));
    EXPECT_TRUE(MatrixNear(f, testing::flip_oracle(d), 0.0));
  }
}

TEST(Kron, DimensionsMultiply) {
  const ComplexMatrix k = kron(ComplexMatrix::Ones(2, 3), ComplexMatrix::Ones(4, 5));
  EXPECT_EQ(k.rows(), 8);
  EXPECT_EQ(k.cols(), 15);
}

}  // namespace
}  // namespace geamkit
