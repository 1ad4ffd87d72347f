#pragma once

#include <functional>

#include "belab/catalog.hpp"
#include "belab/types.hpp"

namespace belab {

/// Linear map on d x d matrices, stored as its d^2 x d^2 transfer matrix
/// acting on column-stacked inputs. Built from its action on matrix units,
/// so arbitrary user maps plug in.
struct SingleSiteMap {
  int dim;
  Matrix transfer;

  Matrix apply(const Matrix& x) const;

  static SingleSiteMap from_action(int dim,
                                   const std::function<Matrix(const Matrix&)>& action);
};

SingleSiteMap identity_map(int dim);
SingleSiteMap transpose_map(int dim);

/// Direct action of the positive (not completely positive) map on M_3:
/// out_kk = (a_kk + a_{k+1,k+1})/2 cyclically, off-diagonals -a_kl/2.
Matrix choi_map(const Matrix& x);

/// Transfer-matrix form of choi_map.
SingleSiteMap choi_site_map();

/// Real orthogonal one-party rotation; u^T u = I within 1e-12.
struct LocalUnitary {
  Matrix u;

  explicit LocalUnitary(Matrix u_in);
  int dim() const { return static_cast<int>(u.rows()); }
};

/// The pi/3 rotation in the 1-2 plane used alongside the Choi map.
LocalUnitary choi_unitary();

/// Blockwise transpose over party B: each d_b x d_b block of the operator
/// is transposed in place.
Matrix partial_transpose(const Matrix& m, Dims dims);
Matrix partial_transpose(const DensityMatrix& rho);

/// True iff the partial transpose has no eigenvalue below -tol.
bool is_ppt(const DensityMatrix& rho, double tol = kDetectionTol);

/// (I (x) u) rho (I (x) u)^T; spectrum and trace preserved.
DensityMatrix conjugate_local(const DensityMatrix& rho, const LocalUnitary& u);

/// Apply a single-site map to every party-B block of rho. The image is
/// checked for symmetry (1e-10) and symmetrized before returning.
Matrix lift_map(const SingleSiteMap& m, const DensityMatrix& rho);

/// Minimum eigenvalue of the Choi map lifted over party B after the local
/// rotation: min_eig((I (x) Lambda)(I (x) u) rho (I (x) u)^T).
/// A value below -kDetectionTol certifies entanglement; the map is positive,
/// so every separable state maps to a positive semidefinite operator.
/// Requires d_b = 3.
double choi_u_detect(const DensityMatrix& rho);

}  // namespace belab
