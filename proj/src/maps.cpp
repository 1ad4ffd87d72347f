#include "belab/maps.hpp"

#include <cmath>
#include <utility>

namespace belab {

namespace {

Vector vec(const Matrix& x) {
  return Eigen::Map<const Vector>(x.data(), x.size());
}

Matrix unvec(const Vector& v, int dim) {
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace

Matrix SingleSiteMap::apply(const Matrix& x) const {
  if (x.rows() != dim || x.cols() != dim) {
    throw std::invalid_argument("SingleSiteMap::apply: input size mismatch");
  }
  return unvec(transfer * vec(x), dim);
}

SingleSiteMap SingleSiteMap::from_action(int dim,
                                         const std::function<Matrix(const Matrix&)>& action) {
  Matrix transfer(dim * dim, dim * dim);
  Matrix unit = Matrix::Zero(dim, dim);
  for (int l = 0; l < dim; ++l) {
    for (int k = 0; k < dim; ++k) {
      unit(k, l) = 1.0;
      transfer.col(l * dim + k) = vec(action(unit));
      unit(k, l) = 0.0;
    }
  }
  return {dim, std::move(transfer)};
}

SingleSiteMap identity_map(int dim) {
  return {dim, Matrix::Identity(dim * dim, dim * dim)};
}

SingleSiteMap transpose_map(int dim) {
  return SingleSiteMap::from_action(dim, [](const Matrix& x) { return Matrix(x.transpose()); });
}

Matrix choi_map(const Matrix& x) {
  if (x.rows() != 3 || x.cols() != 3) {
    throw std::invalid_argument("choi_map: input must be 3x3");
  }
  Matrix out = -x;
  out(0, 0) = x(0, 0) + x(1, 1);
  out(1, 1) = x(1, 1) + x(2, 2);
  out(2, 2) = x(2, 2) + x(0, 0);
  return 0.5 * out;
}

SingleSiteMap choi_site_map() {
  return SingleSiteMap::from_action(3, [](const Matrix& x) { return choi_map(x); });
}

LocalUnitary::LocalUnitary(Matrix u_in) : u(std::move(u_in)) {
  if (u.rows() != u.cols()) {
    throw std::invalid_argument("LocalUnitary: matrix is not square");
  }
  const Matrix gram = u.transpose() * u;
  if ((gram - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("LocalUnitary: matrix is not orthogonal");
  }
}

LocalUnitary choi_unitary() {
  const double s = std::sqrt(3.0) / 2.0;
  Matrix u(3, 3);
  u << 0.5, s, 0.0,
      -s, 0.5, 0.0,
      0.0, 0.0, 1.0;
  return LocalUnitary(std::move(u));
}

Matrix partial_transpose(const Matrix& m, Dims dims) {
  if (m.rows() != dims.total() || m.cols() != dims.total()) {
    throw std::invalid_argument("partial_transpose: size does not match dims");
  }
  const int db = dims.b;
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < dims.a; ++i) {
    for (int j = 0; j < dims.a; ++j) {
      out.block(i * db, j * db, db, db) = m.block(i * db, j * db, db, db).transpose();
    }
  }
  return out;
}

Matrix partial_transpose(const DensityMatrix& rho) {
  return partial_transpose(rho.mat, rho.dims);
}

bool is_ppt(const DensityMatrix& rho, double tol) {
  if (tol <= 0) {
    throw std::invalid_argument("is_ppt: tolerance must be positive");
  }
  return min_eig(partial_transpose(rho)) >= -tol;
}

DensityMatrix conjugate_local(const DensityMatrix& rho, const LocalUnitary& u) {
  if (u.dim() != rho.dims.b) {
    throw std::invalid_argument("conjugate_local: unitary dimension must match party B");
  }
  const Matrix w = kron(Matrix::Identity(rho.dims.a, rho.dims.a), u.u);
  Matrix m = w * rho.mat * w.transpose();
  const Matrix t = m.transpose();
  m = 0.5 * (m + t);
  return DensityMatrix(std::move(m), rho.dims);
}

Matrix lift_map(const SingleSiteMap& m, const DensityMatrix& rho) {
  if (m.dim != rho.dims.b) {
    throw std::invalid_argument("lift_map: map arity must match party B");
  }
  const int db = rho.dims.b;
  Matrix out(rho.mat.rows(), rho.mat.cols());
  for (int i = 0; i < rho.dims.a; ++i) {
    for (int j = 0; j < rho.dims.a; ++j) {
      out.block(i * db, j * db, db, db) = m.apply(rho.mat.block(i * db, j * db, db, db));
    }
  }
  const Matrix t = out.transpose();
  if ((out - t).cwiseAbs().maxCoeff() > 1e-10) {
    throw NumericalError("lift_map: image asymmetry exceeds tolerance");
  }
  return 0.5 * (out + t);
}

double choi_u_detect(const DensityMatrix& rho) {
  if (rho.dims.b != 3) {
    throw std::invalid_argument("choi_u_detect: party B dimension must be 3");
  }
  static const SingleSiteMap lambda = choi_site_map();
  static const LocalUnitary u = choi_unitary();
  return min_eig(lift_map(lambda, conjugate_local(rho, u)));
}

}  // namespace belab
