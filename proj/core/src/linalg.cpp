#include "geamkit/linalg.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "geamkit/error.hpp"

namespace geamkit {

void require_finite(const ComplexMatrix& m, std::string_view what) {
  if (!m.allFinite()) {
    throw RejectionError(std::string(what) + " has non-finite entries");
  }
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs(const RealMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, double tolerance) {
  if (m.rows() != m.cols()) {
    throw RejectionError("Hermitian matrix must be square, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
  require_finite(m, "Hermitian matrix");
  const double asym = max_abs(ComplexMatrix(m - m.adjoint()));
  if (asym > tolerance) {
    throw RejectionError("matrix is not Hermitian: max|M - M^dagger| = " + std::to_string(asym));
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

double HermitianMatrix::hs_inner(const HermitianMatrix& other) const {
  // Tr(AB) = sum_ij A_ij B_ji; for Hermitian B that is sum_ij A_ij conj(B_ij).
  return (m_.array() * other.m_.conjugate().array()).sum().real();
}

EigenDecomposition herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    // Eigen's tridiagonal QR gives up after 30 * n sweeps.
    throw NumericalError("Hermitian eigensolver did not converge within " +
                         std::to_string(30 * h.dim()) + " iterations");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge within " +
                         std::to_string(30 * h.dim()) + " iterations");
  }
  return solver.eigenvalues()(0);
}

double trace_norm(const ComplexMatrix& m) {
  require_finite(m, "trace_norm input");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues().sum();
}

double trace_norm(const RealMatrix& m) {
  if (!m.allFinite()) throw RejectionError("trace_norm input has non-finite entries");
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return svd.singularValues().sum();
}

namespace {

void check_bipartite(const ComplexMatrix& rho, BipartiteDims dims, const char* op) {
  if (dims.a < 1 || dims.b < 1 || rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw RejectionError(std::string(op) + ": matrix is " + std::to_string(rho.rows()) + "x" +
                         std::to_string(rho.cols()) + ", expected " + std::to_string(dims.total()) +
                         "x" + std::to_string(dims.total()));
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Subsystem keep) {
  check_bipartite(rho, dims, "partial_trace");
  const int da = dims.a;
  const int db = dims.b;
  if (keep == Subsystem::A) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < da; ++j)
        for (int k = 0; k < db; ++k) out(i, j) += rho(i * db + k, j * db + k);
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < da; ++k) out(i, j) += rho(k * db + i, k * db + j);
  return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Subsystem which) {
  check_bipartite(rho, dims, "partial_transpose");
  const int da = dims.a;
  const int db = dims.b;
  ComplexMatrix out(rho.rows(), rho.cols());
  for (int i = 0; i < da; ++i)
    for (int k = 0; k < db; ++k)
      for (int j = 0; j < da; ++j)
        for (int l = 0; l < db; ++l) {
          const Complex v = rho(i * db + k, j * db + l);
          if (which == Subsystem::A) {
            out(j * db + k, i * db + l) = v;
          } else {
            out(i * db + l, j * db + k) = v;
          }
        }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix flip_operator(int d) {
  if (d < 2) throw RejectionError("flip operator needs d >= 2, got " + std::to_string(d));
  ComplexMatrix f = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) f(m * d + n, n * d + m) = 1.0;
  return f;
}

ComplexMatrix max_entangled_projector(int d) {
  if (d < 2) throw RejectionError("maximally entangled state needs d >= 2, got " + std::to_string(d));
  ComplexMatrix p = ComplexMatrix::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) p(m * d + m, n * d + n) = 1.0 / d;
  return p;
}

}  // namespace geamkit
