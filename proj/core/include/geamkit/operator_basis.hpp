#pragma once

#include <vector>

#include "geamkit/linalg.hpp"

namespace geamkit {

/// d^2 - 1 traceless Hermitian operators, orthonormal under Tr(G_i G_j).
/// Together with I/sqrt(d) they span the Hermitian d x d matrices.
class OperatorBasis {
 public:
  /// Validates tracelessness (1e-12) and orthonormality (`tolerance`).
  explicit OperatorBasis(std::vector<HermitianMatrix> elements, double tolerance = 1e-11);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<HermitianMatrix>& elements() const noexcept { return elements_; }
  const HermitianMatrix& operator[](int i) const { return elements_.at(static_cast<std::size_t>(i)); }

 private:
  int dim_ = 0;
  std::vector<HermitianMatrix> elements_;
};

/// Normalized generalized Gell-Mann matrices: all symmetric (j<k), then all
/// antisymmetric (j<k), then the d-1 diagonal ones.
OperatorBasis gell_mann_basis(int d);

/// Assignment of basis elements to N frames, frame alpha receiving M_alpha - 1
/// elements.
class BasisPartition {
 public:
  const OperatorBasis& basis() const noexcept { return basis_; }
  int dim() const noexcept { return basis_.dim(); }
  int frame_count() const noexcept { return static_cast<int>(group_sizes_.size()); }
  const std::vector<int>& group_sizes() const noexcept { return group_sizes_; }
  const std::vector<std::vector<int>>& groups() const noexcept { return groups_; }

  /// Basis elements G_{alpha,k}, k = 1..M_alpha-1.
  std::vector<HermitianMatrix> elements(int alpha) const;

 private:
  friend BasisPartition partition_basis(OperatorBasis basis, std::vector<int> group_sizes);
  BasisPartition(OperatorBasis basis, std::vector<int> sizes, std::vector<std::vector<int>> groups)
      : basis_(std::move(basis)), group_sizes_(std::move(sizes)), groups_(std::move(groups)) {}

  OperatorBasis basis_;
  std::vector<int> group_sizes_;
  std::vector<std::vector<int>> groups_;
};

/// Contiguous partition in declaration order. Requires every M_alpha >= 2 and
/// sum(M_alpha - 1) = d^2 - 1.
BasisPartition partition_basis(OperatorBasis basis, std::vector<int> group_sizes);

}  // namespace geamkit
