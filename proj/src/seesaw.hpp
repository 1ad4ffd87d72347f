#pragma once

// Internal alternating-eigenvector machinery shared by the gamma
// estimator (minimization) and the product-vector search (maximization).

#include <cstdint>
#include <random>

#include "belab/linalg.hpp"
#include "belab/types.hpp"

namespace belab::detail {

inline std::uint64_t restart_seed(std::uint64_t base, int restart) {
  return base + static_cast<std::uint64_t>(restart) * 0x9E3779B97F4A7C15ull;
}

inline Vector random_unit(std::mt19937_64& eng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v(i) = gauss(eng);
  } while (v.norm() <= 1e-12);
  return v.normalized();
}

/// M[i][i'] = (e_i (x) beta)^T op (e_i' (x) beta), a dims.a square matrix.
inline Matrix compress_onto_a(const Matrix& op, Dims dims, const Vector& beta) {
  Matrix b = Matrix::Zero(dims.total(), dims.a);
  for (int i = 0; i < dims.a; ++i) {
    b.block(i * dims.b, i, dims.b, 1) = beta;
  }
  return b.transpose() * op * b;
}

/// M[k][l] = (alpha (x) e_k)^T op (alpha (x) e_l), a dims.b square matrix.
inline Matrix compress_onto_b(const Matrix& op, Dims dims, const Vector& alpha) {
  Matrix a = Matrix::Zero(dims.total(), dims.b);
  for (int i = 0; i < dims.a; ++i) {
    a.block(i * dims.b, 0, dims.b, dims.b) =
        alpha(i) * Matrix::Identity(dims.b, dims.b);
  }
  return a.transpose() * op * a;
}

struct SeesawOutcome {
  Vector alpha;
  Vector beta;
  double value = 0.0;
};

/// Alternate between the two parties, replacing each factor by the extremal
/// eigenvector of the compressed operator, until the objective moves by less
/// than `tol` or `max_iters` rounds pass.
inline SeesawOutcome seesaw_extremize(const Matrix& op, Dims dims, std::mt19937_64& eng,
                                      bool maximize, int max_iters = 500,
                                      double tol = 1e-12) {
  Vector alpha = random_unit(eng, dims.a);
  Vector beta = random_unit(eng, dims.b);
  double value = 0.0;
  double prev = maximize ? -1e300 : 1e300;
  for (int it = 0; it < max_iters; ++it) {
    const EigenDecomposition ea = eig_sym(compress_onto_a(op, dims, beta));
    alpha = ea.eigenvectors.col(maximize ? dims.a - 1 : 0);
    const EigenDecomposition eb = eig_sym(compress_onto_b(op, dims, alpha));
    const int pick = maximize ? dims.b - 1 : 0;
    beta = eb.eigenvectors.col(pick);
    value = eb.eigenvalues(pick);
    if (std::abs(value - prev) < tol) break;
    prev = value;
  }
  return {std::move(alpha), std::move(beta), value};
}

}  // namespace belab::detail
