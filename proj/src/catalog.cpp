#include "belab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace belab {

namespace {

Vector ket(int dim, int index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return v;
}

Vector plus(int dim, std::initializer_list<int> indices) {
  Vector v = Vector::Zero(dim);
  for (int i : indices) v(i) = 1.0;
  return v;
}

Vector diff(int dim, int i, int j) {
  Vector v = Vector::Zero(dim);
  v(i) = 1.0;
  v(j) = -1.0;
  return v;
}

}  // namespace

ProductVector::ProductVector(Vector alpha_in, Vector beta_in)
    : alpha(std::move(alpha_in)), beta(std::move(beta_in)) {
  const double na = alpha.norm();
  const double nb = beta.norm();
  if (na <= 1e-12 || nb <= 1e-12) {
    throw std::invalid_argument("ProductVector: zero factor");
  }
  alpha /= na;
  beta /= nb;
}

ProductBasis::ProductBasis(std::vector<ProductVector> vectors_in, Dims dims_in,
                           std::optional<int> stopper, std::string label_in)
    : vectors(std::move(vectors_in)), dims(dims_in), stopper_index(stopper),
      label(std::move(label_in)) {
  if (vectors.empty()) {
    throw std::invalid_argument("ProductBasis: empty vector list");
  }
  if (static_cast<int>(vectors.size()) > dims.total()) {
    throw std::invalid_argument("ProductBasis: more vectors than the space dimension");
  }
  if (stopper_index && (*stopper_index < 0 || *stopper_index >= size())) {
    throw std::invalid_argument("ProductBasis: stopper index out of range");
  }
  std::vector<Vector> fulls;
  fulls.reserve(vectors.size());
  for (const ProductVector& v : vectors) {
    if (!(v.dims() == dims)) {
      throw std::invalid_argument("ProductBasis: member dimension mismatch");
    }
    fulls.push_back(v.full());
  }
  for (std::size_t i = 0; i < fulls.size(); ++i) {
    for (std::size_t j = i + 1; j < fulls.size(); ++j) {
      if (std::abs(fulls[i].dot(fulls[j])) > 1e-12) {
        throw std::invalid_argument("ProductBasis: members are not mutually orthogonal");
      }
    }
  }
}

Matrix ProductBasis::span_projector() const {
  std::vector<Vector> fulls;
  fulls.reserve(vectors.size());
  for (const ProductVector& v : vectors) fulls.push_back(v.full());
  return projector_onto_span(fulls);
}

ProductBasis ProductBasis::subset(const std::vector<int>& indices,
                                  const std::string& new_label) const {
  std::vector<ProductVector> kept;
  std::optional<int> new_stopper;
  kept.reserve(indices.size());
  for (int idx : indices) {
    if (idx < 0 || idx >= size()) {
      throw std::invalid_argument("ProductBasis::subset: index out of range");
    }
    if (stopper_index && *stopper_index == idx) {
      new_stopper = static_cast<int>(kept.size());
    }
    kept.push_back(vectors[idx]);
  }
  return ProductBasis(std::move(kept), dims, new_stopper, new_label);
}

ProductBasis ProductBasis::without(int index) const {
  std::vector<int> keep;
  for (int i = 0; i < size(); ++i) {
    if (i != index) keep.push_back(i);
  }
  if (static_cast<int>(keep.size()) == size()) {
    throw std::invalid_argument("ProductBasis::without: index out of range");
  }
  return subset(keep, label + "-minus-" + std::to_string(index + 1));
}

ProductBasis ProductBasis::moved_to_back(int index) const {
  if (index < 0 || index >= size()) {
    throw std::invalid_argument("ProductBasis::moved_to_back: index out of range");
  }
  std::vector<int> order;
  for (int i = 0; i < size(); ++i) {
    if (i != index) order.push_back(i);
  }
  order.push_back(index);
  return subset(order, label);
}

DensityMatrix::DensityMatrix(Matrix mat_in, Dims dims_in)
    : mat(std::move(mat_in)), dims(dims_in) {
  if (dims.a <= 0 || dims.b <= 0) {
    throw std::invalid_argument("DensityMatrix: non-positive dimension");
  }
  if (mat.rows() != dims.total() || mat.cols() != dims.total()) {
    throw std::invalid_argument("DensityMatrix: matrix size does not match dims");
  }
  if (std::abs(mat.trace() - 1.0) > 1e-12) {
    throw std::invalid_argument("DensityMatrix: trace differs from 1");
  }
  if (!is_symmetric(mat, 1e-12)) {
    throw std::invalid_argument("DensityMatrix: matrix is not symmetric");
  }
  const Matrix t = mat.transpose();
  mat = 0.5 * (mat + t);
  if (min_eig(mat) < -1e-10) {
    throw std::invalid_argument("DensityMatrix: matrix is not positive semidefinite");
  }
}

DensityMatrix pure_state(const ProductVector& v) {
  const Vector f = v.full();
  return DensityMatrix(f * f.transpose(), v.dims());
}

DensityMatrix maximally_mixed(Dims dims) {
  const int d = dims.total();
  return DensityMatrix(Matrix::Identity(d, d) / d, dims);
}

ProductBasis tiles_upb() {
  std::vector<ProductVector> v;
  v.emplace_back(ket(3, 0), diff(3, 0, 1));
  v.emplace_back(diff(3, 0, 1), ket(3, 2));
  v.emplace_back(ket(3, 2), diff(3, 1, 2));
  v.emplace_back(diff(3, 1, 2), ket(3, 0));
  v.emplace_back(plus(3, {0, 1, 2}), plus(3, {0, 1, 2}));
  return ProductBasis(std::move(v), {3, 3}, 4, "tiles");
}

ProductBasis gentiles2_4x3_upb() {
  std::vector<ProductVector> v;
  v.emplace_back(ket(4, 0), diff(3, 0, 1));
  v.emplace_back(ket(4, 1), diff(3, 1, 2));
  v.emplace_back(ket(4, 2), diff(3, 2, 0));
  v.emplace_back(diff(4, 1, 3), ket(3, 0));
  v.emplace_back(diff(4, 2, 3), ket(3, 1));
  v.emplace_back(diff(4, 0, 3), ket(3, 2));
  v.emplace_back(plus(4, {0, 1, 2, 3}), plus(3, {0, 1, 2}));
  return ProductBasis(std::move(v), {4, 3}, 6, "gentiles2");
}

std::vector<ProductVector> tiles_plus_partners() {
  std::vector<ProductVector> v;
  v.emplace_back(ket(4, 0), plus(3, {0, 1}));
  v.emplace_back(ket(4, 1), plus(3, {1, 2}));
  v.emplace_back(ket(4, 2), plus(3, {2, 0}));
  v.emplace_back(plus(4, {1, 3}), ket(3, 0));
  v.emplace_back(plus(4, {2, 3}), ket(3, 1));
  v.emplace_back(plus(4, {0, 3}), ket(3, 2));
  return v;
}

std::vector<ProductVector> tiles_completion() {
  std::vector<ProductVector> v;
  v.emplace_back(ket(3, 0), plus(3, {0, 1}));
  v.emplace_back(plus(3, {0, 1}), ket(3, 2));
  v.emplace_back(ket(3, 2), plus(3, {1, 2}));
  v.emplace_back(plus(3, {1, 2}), ket(3, 0));
  v.emplace_back(ket(3, 1), ket(3, 1));
  return v;
}

ProductBasis extended_tiles_4x3_upb() {
  const ProductBasis base = tiles_upb();
  std::vector<ProductVector> v;
  for (const ProductVector& t : base.vectors) {
    Vector a = Vector::Zero(4);
    a.head(3) = t.alpha;
    v.emplace_back(std::move(a), t.beta);
  }
  for (int b = 0; b < 3; ++b) {
    v.emplace_back(ket(4, 3), ket(3, b));
  }
  return ProductBasis(std::move(v), {4, 3}, std::nullopt, "extended-tiles");
}

DensityMatrix edge_state(const ProductBasis& basis) {
  const int d = basis.dims.total();
  const int n = basis.size();
  if (n >= d) {
    throw std::invalid_argument("edge_state: basis spans the whole space, no complement");
  }
  Matrix sum = Matrix::Zero(d, d);
  for (const ProductVector& v : basis.vectors) {
    const Vector f = v.full();
    sum += f * f.transpose();
  }
  return DensityMatrix((Matrix::Identity(d, d) - sum) / (d - n), basis.dims);
}

DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double lambda) {
  if (!(a.dims == b.dims)) {
    throw std::invalid_argument("mix: dimension mismatch");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("mix: lambda outside [0, 1]");
  }
  if (lambda == 0.0) return b;
  if (lambda == 1.0) return a;
  return DensityMatrix(lambda * a.mat + (1.0 - lambda) * b.mat, a.dims);
}

StateFamily rho1_family(int psi_index) {
  const ProductBasis upb = tiles_upb();
  if (psi_index < 0 || psi_index >= upb.size()) {
    throw std::invalid_argument("rho1_family: psi index out of range");
  }
  return {"rho1:" + std::to_string(psi_index + 1), pure_state(upb.vectors[psi_index]),
          edge_state(upb)};
}

StateFamily rho2_family() {
  const ProductBasis upb = tiles_upb();
  return {"rho2", maximally_mixed(upb.dims), edge_state(upb)};
}

StateFamily rho3_family(int beta_index) {
  if (beta_index < 0 || beta_index >= 3) {
    throw std::invalid_argument("rho3_family: ket index out of range");
  }
  Vector a = Vector::Zero(4);
  a(3) = 1.0;
  Vector b = Vector::Zero(3);
  b(beta_index) = 1.0;
  const ProductVector pure(std::move(a), std::move(b));
  return {"rho3:4" + std::to_string(beta_index + 1), pure_state(pure),
          embed_party_a(edge_state(tiles_upb()), 4)};
}

StateFamily sigma1_family() {
  const ProductBasis upb = gentiles2_4x3_upb();
  return {"sigma1", pure_state(upb.vectors[6]), edge_state(upb)};
}

StateFamily sigma2_family(const ProductBasis& upb, const std::vector<int>& subset_indices) {
  if (subset_indices.empty()) {
    throw std::invalid_argument("sigma2_family: empty subset");
  }
  if (!upb.stopper_index) {
    throw std::invalid_argument("sigma2_family: basis has no declared stopper");
  }
  if (std::find(subset_indices.begin(), subset_indices.end(), *upb.stopper_index) ==
      subset_indices.end()) {
    throw std::invalid_argument("sigma2_family: subset must contain the stopper");
  }
  std::vector<Vector> fulls;
  std::string lbl = "sigma2:";
  for (std::size_t k = 0; k < subset_indices.size(); ++k) {
    const int idx = subset_indices[k];
    if (idx < 0 || idx >= upb.size()) {
      throw std::invalid_argument("sigma2_family: subset index out of range");
    }
    if (std::count(subset_indices.begin(), subset_indices.end(), idx) > 1) {
      throw std::invalid_argument("sigma2_family: duplicate subset index");
    }
    fulls.push_back(upb.vectors[idx].full());
    lbl += (k ? "," : "") + std::to_string(idx + 1);
  }
  const Matrix p = projector_onto_span(fulls) / static_cast<double>(fulls.size());
  return {lbl, DensityMatrix(p, upb.dims), edge_state(upb)};
}

DensityMatrix sigma2_state(const ProductBasis& upb, const std::vector<int>& subset_indices,
                           double lambda) {
  return sigma2_family(upb, subset_indices).at(lambda);
}

DensityMatrix embed_party_a(const DensityMatrix& rho, int new_dim_a) {
  if (new_dim_a < rho.dims.a) {
    throw std::invalid_argument("embed_party_a: target dimension smaller than source");
  }
  const int db = rho.dims.b;
  Matrix out = Matrix::Zero(new_dim_a * db, new_dim_a * db);
  out.topLeftCorner(rho.dims.total(), rho.dims.total()) = rho.mat;
  return DensityMatrix(std::move(out), {new_dim_a, db});
}

UcpbComplement ucpb_complement(const ProductBasis& upb, int prefix_count) {
  const int n = upb.size();
  const int d = upb.dims.total();
  if (prefix_count <= 0 || prefix_count >= n) {
    throw std::invalid_argument("ucpb_complement: prefix count must satisfy 0 < n' < n");
  }
  Matrix sum = Matrix::Zero(d, d);
  for (int i = 0; i < prefix_count; ++i) {
    const Vector f = upb.vectors[i].full();
    sum += f * f.transpose();
  }
  DensityMatrix state((Matrix::Identity(d, d) - sum) / (d - prefix_count), upb.dims);

  const double w_edge = static_cast<double>(d - n) / (d - prefix_count);
  const double w_noise = static_cast<double>(n - prefix_count) / (d - prefix_count);

  Matrix rest = Matrix::Zero(d, d);
  for (int i = prefix_count; i < n; ++i) {
    const Vector f = upb.vectors[i].full();
    rest += f * f.transpose();
  }
  rest /= (n - prefix_count);
  const Matrix recombined = w_edge * edge_state(upb).mat + w_noise * rest;
  if ((recombined - state.mat).cwiseAbs().maxCoeff() > 1e-12) {
    throw NumericalError("ucpb_complement: decomposition identity check failed");
  }
  return {std::move(state), w_edge, w_noise};
}

}  // namespace belab
