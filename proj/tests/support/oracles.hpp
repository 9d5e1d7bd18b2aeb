#pragma once

// Reference computations that avoid the library's own code paths. Everything
// here is written from definitions with plain loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace geamkit::testing {

using cd = std::complex<double>;

/// Cyclic Jacobi eigenvalues of a real symmetric matrix, ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd a) {
  const Eigen::Index n = a.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-30) break;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(a(p, q)) < 1e-300) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = a(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

/// Eigenvalues of a complex Hermitian matrix via its real 2n x 2n embedding
/// [[Re, -Im], [Im, Re]]; each eigenvalue appears twice, so take every other.
inline std::vector<double> hermitian_eigenvalues_oracle(const Eigen::MatrixXcd& h) {
  const Eigen::Index n = h.rows();
  Eigen::MatrixXd e(2 * n, 2 * n);
  e << h.real(), -h.imag(), h.imag(), h.real();
  const auto doubled = jacobi_eigenvalues(e);
  std::vector<double> ev;
  for (std::size_t i = 0; i < doubled.size(); i += 2) ev.push_back(0.5 * (doubled[i] + doubled[i + 1]));
  return ev;
}

/// Sum of singular values of a real matrix. The symmetric embedding
/// [[0, A], [A^T, 0]] has eigenvalues +-sigma_i, so the trace norm is half the
/// sum of absolute eigenvalues; no square roots of near-zero values involved.
inline double trace_norm_oracle(const Eigen::MatrixXd& a) {
  const Eigen::Index r = a.rows();
  const Eigen::Index c = a.cols();
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(r + c, r + c);
  e.topRightCorner(r, c) = a;
  e.bottomLeftCorner(c, r) = a.transpose();
  double s = 0.0;
  for (double lam : jacobi_eigenvalues(e)) s += std::abs(lam);
  return 0.5 * s;
}

/// Partial trace by direct index summation over the traced factor.
inline Eigen::MatrixXcd partial_trace_oracle(const Eigen::MatrixXcd& rho, int da, int db, bool keep_a) {
  const int keep = keep_a ? da : db;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
  for (int i = 0; i < keep; ++i)
    for (int j = 0; j < keep; ++j) {
      cd acc = 0.0;
      const int traced = keep_a ? db : da;
      for (int t = 0; t < traced; ++t) {
        const int row = keep_a ? i * db + t : t * db + i;
        const int col = keep_a ? j * db + t : t * db + j;
        acc += rho(row, col);
      }
      out(i, j) = acc;
    }
  return out;
}

inline Eigen::MatrixXcd projector(const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd u = v / v.norm();
  return u * u.adjoint();
}

/// Explicit qubit MUB effects scaled by 1/3, frames (x, y, z) with the
/// element order the Gell-Mann construction produces: {|->, |+>},
/// {|-i>, |+i>}, {|1>, |0>}.
inline std::vector<std::vector<Eigen::MatrixXcd>> explicit_qubit_mub_effects() {
  const cd i(0.0, 1.0);
  auto ket = [](cd a, cd b) {
    Eigen::VectorXcd v(2);
    v << a, b;
    return v;
  };
  return {{projector(ket(1, -1)) / 3.0, projector(ket(1, 1)) / 3.0},
          {projector(ket(1, -i)) / 3.0, projector(ket(1, i)) / 3.0},
          {projector(ket(0, 1)) / 3.0, projector(ket(1, 0)) / 3.0}};
}

/// Tetrahedral SIC effects (I + n.sigma)/4 with Bloch vectors at alternating
/// cube corners.
inline std::vector<Eigen::MatrixXcd> explicit_tetrahedral_effects() {
  const cd i(0.0, 1.0);
  Eigen::MatrixXcd sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  const double r = 1.0 / std::sqrt(3.0);
  const double n[4][3] = {{r, r, r}, {r, -r, -r}, {-r, r, -r}, {-r, -r, r}};
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& v : n) {
    out.push_back((Eigen::MatrixXcd::Identity(2, 2) + v[0] * sx + v[1] * sy + v[2] * sz) / 4.0);
  }
  return out;
}

/// Swap operator written out from its definition.
inline Eigen::MatrixXcd flip_oracle(int d) {
  Eigen::MatrixXcd f = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) f(m * d + n, n * d + m) = 1.0;
  return f;
}

inline Eigen::MatrixXcd phi_plus_oracle(int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  for (int m = 0; m < d; ++m) v(m * d + m) = 1.0;
  return projector(v);
}

}  // namespace geamkit::testing
