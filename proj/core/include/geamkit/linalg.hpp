#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace geamkit {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermitianTolerance = 1e-12;

/// Throws RejectionError if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, std::string_view what = "matrix");

/// Largest absolute entry; zero for an empty matrix.
double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

/// Square complex matrix equal to its conjugate transpose.
///
/// Construction checks ||M - M^dagger||_max <= tolerance and then stores the
/// symmetrized (M + M^dagger)/2, so downstream eigensolvers never see drift.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& m, double tolerance = kHermitianTolerance);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return m_; }

  /// Tr(this * other), real for two Hermitian operands.
  double hs_inner(const HermitianMatrix& other) const;
  double trace() const { return m_.trace().real(); }

 private:
  ComplexMatrix m_;
};

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns are eigenvectors
};

EigenDecomposition herm_eig(const HermitianMatrix& h);
double min_eigenvalue(const HermitianMatrix& h);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);
double trace_norm(const RealMatrix& m);

enum class Subsystem { A, B };

struct BipartiteDims {
  int a = 0;
  int b = 0;
  int total() const noexcept { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

ComplexMatrix partial_trace(const ComplexMatrix& rho, BipartiteDims dims, Subsystem keep);
ComplexMatrix partial_transpose(const ComplexMatrix& rho, BipartiteDims dims, Subsystem which);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Swap operator sum_{m,n} |m><n| (x) |n><m| on C^d (x) C^d.
ComplexMatrix flip_operator(int d);

/// |Phi+><Phi+| with |Phi+> = sum_m |mm>/sqrt(d).
ComplexMatrix max_entangled_projector(int d);

}  // namespace geamkit
