#include "geamkit/operator_basis.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "geamkit/error.hpp"

namespace geamkit {

OperatorBasis::OperatorBasis(std::vector<HermitianMatrix> elements, double tolerance)
    : elements_(std::move(elements)) {
  if (elements_.empty()) throw RejectionError("operator basis is empty");
  dim_ = elements_.front().dim();
  if (dim_ < 2) throw RejectionError("operator basis needs d >= 2");
  const int expected = dim_ * dim_ - 1;
  if (size() != expected) {
    throw RejectionError("operator basis for d=" + std::to_string(dim_) + " needs " +
                         std::to_string(expected) + " elements, got " + std::to_string(size()));
  }
  for (int i = 0; i < size(); ++i) {
    const auto& g = elements_[static_cast<std::size_t>(i)];
    if (g.dim() != dim_) throw RejectionError("operator basis elements have mixed dimensions");
    if (std::abs(g.matrix().trace()) > 1e-12) {
      throw RejectionError("basis element " + std::to_string(i) + " is not traceless");
    }
    for (int j = 0; j <= i; ++j) {
      const double ip = g.hs_inner(elements_[static_cast<std::size_t>(j)]);
      const double target = (i == j) ? 1.0 : 0.0;
      if (std::abs(ip - target) > tolerance) {
        throw RejectionError("basis elements " + std::to_string(i) + "," + std::to_string(j) +
                             " violate orthonormality: Tr(G_i G_j) = " + std::to_string(ip));
      }
    }
  }
}

OperatorBasis gell_mann_basis(int d) {
  if (d < 2) throw RejectionError("Gell-Mann basis needs d >= 2, got " + std::to_string(d));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const Complex i_unit(0.0, 1.0);
  std::vector<HermitianMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d - 1));

  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = inv_sqrt2;
      g(k, j) = inv_sqrt2;
      out.emplace_back(g);
    }
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      ComplexMatrix g = ComplexMatrix::Zero(d, d);
      g(j, k) = -i_unit * inv_sqrt2;
      g(k, j) = i_unit * inv_sqrt2;
      out.emplace_back(g);
    }
  for (int l = 1; l < d; ++l) {
    ComplexMatrix g = ComplexMatrix::Zero(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    for (int j = 0; j < l; ++j) g(j, j) = norm;
    g(l, l) = -l * norm;
    out.emplace_back(g);
  }
  return OperatorBasis(std::move(out));
}

std::vector<HermitianMatrix> BasisPartition::elements(int alpha) const {
  if (alpha < 0 || alpha >= frame_count()) {
    throw RejectionError("frame index " + std::to_string(alpha) + " out of range");
  }
  std::vector<HermitianMatrix> out;
  for (int idx : groups_[static_cast<std::size_t>(alpha)]) out.push_back(basis_[idx]);
  return out;
}

BasisPartition partition_basis(OperatorBasis basis, std::vector<int> group_sizes) {
  if (group_sizes.empty()) throw RejectionError("partition needs at least one frame");
  for (std::size_t alpha = 0; alpha < group_sizes.size(); ++alpha) {
    if (group_sizes[alpha] < 2) {
      throw RejectionError("frame " + std::to_string(alpha) + " has size " +
                           std::to_string(group_sizes[alpha]) + "; every M_alpha must be >= 2");
    }
  }
  const int d = basis.dim();
  const int n = static_cast<int>(group_sizes.size());
  const int sum = std::accumulate(group_sizes.begin(), group_sizes.end(), 0);
  if (sum - n != d * d - 1) {
    throw RejectionError("frame sizes sum to " + std::to_string(sum) + "; expected d^2 + N - 1 = " +
                         std::to_string(d * d + n - 1));
  }
  std::vector<std::vector<int>> groups;
  int next = 0;
  for (int m : group_sizes) {
    std::vector<int> g(static_cast<std::size_t>(m - 1));
    std::iota(g.begin(), g.end(), next);
    next += m - 1;
    groups.push_back(std::move(g));
  }
  return BasisPartition(std::move(basis), std::move(group_sizes), std::move(groups));
}

}  // namespace geamkit
