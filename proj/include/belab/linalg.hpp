#pragma once

#include <vector>

#include "belab/types.hpp"

namespace belab {

/// Kronecker product of two dense expressions:
/// out[(i*rb + k), (j*cb + l)] = a(i,j) * b(k,l).
template <typename DerivedA, typename DerivedB>
Matrix kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

/// Max-norm symmetry test, scaled by max(1, |a|_max).
bool is_symmetric(const Matrix& a, double tol = 1e-10);

/// Eigenvalues ascending, eigenvectors as matching orthonormal columns.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

/// Full symmetric eigendecomposition. Rejects non-symmetric input;
/// symmetrizes the (within-tolerance) input before solving.
EigenDecomposition eig_sym(const Matrix& a);

/// Smallest eigenvalue of a symmetric matrix.
double min_eig(const Matrix& a);

/// Count of eigenvalues with |lambda| > tol.
int rank(const Matrix& a, double tol = kDefaultRankTol);

/// Gram-Schmidt with a re-orthogonalization pass; inputs whose residual
/// after projection falls below `tol` are pruned as linearly dependent.
/// Rejects zero vectors.
std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors, double tol = 1e-10);

/// Orthogonal projector onto the span of the given vectors.
Matrix projector_onto_span(const std::vector<Vector>& vectors);

}  // namespace belab
