#include "belab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace belab {

bool is_symmetric(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - Matrix(a.transpose())).cwiseAbs().maxCoeff() <= tol * scale;
}

EigenDecomposition eig_sym(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("eig_sym: matrix is not square");
  }
  if (!is_symmetric(a)) {
    throw std::invalid_argument("eig_sym: matrix is not symmetric within tolerance");
  }
  const Matrix at = a.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + at));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eig_sym: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eig(const Matrix& a) { return eig_sym(a).eigenvalues(0); }

int rank(const Matrix& a, double tol) {
  if (tol <= 0) {
    throw std::invalid_argument("rank: tolerance must be positive");
  }
  const Vector ev = eig_sym(a).eigenvalues;
  return static_cast<int>((ev.cwiseAbs().array() > tol).count());
}

std::vector<Vector> orthonormalize(const std::vector<Vector>& vectors, double tol) {
  std::vector<Vector> basis;
  basis.reserve(vectors.size());
  for (const Vector& v : vectors) {
    const double norm = v.norm();
    if (norm <= 1e-12) {
      throw std::invalid_argument("orthonormalize: zero vector in input");
    }
    Vector w = v / norm;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& q : basis) {
        w -= q.dot(w) * q;
      }
    }
    if (w.norm() > tol) {
      basis.push_back(w.normalized());
    }
  }
  return basis;
}

Matrix projector_onto_span(const std::vector<Vector>& vectors) {
  if (vectors.empty()) {
    throw std::invalid_argument("projector_onto_span: empty input");
  }
  const std::vector<Vector> basis = orthonormalize(vectors);
  const Eigen::Index dim = vectors.front().size();
  Matrix p = Matrix::Zero(dim, dim);
  for (const Vector& q : basis) {
    p += q * q.transpose();
  }
  return p;
}

}  // namespace belab
