#pragma once

#include <optional>
#include <string>
#include <vector>

#include "belab/linalg.hpp"
#include "belab/types.hpp"

namespace belab {

/// Bipartite product vector stored as its per-party factors.
/// Factors are normalized on construction; the full vector is
/// kron(alpha, beta).
struct ProductVector {
  Vector alpha;
  Vector beta;

  ProductVector(Vector alpha_in, Vector beta_in);

  Dims dims() const { return {static_cast<int>(alpha.size()), static_cast<int>(beta.size())}; }
  Vector full() const { return kron(alpha, beta); }
};

/// Ordered set of mutually orthogonal product vectors. `stopper_index`
/// (0-based) marks the uniform-superposition member whose removal leaves
/// a completable set, when such a member is known.
struct ProductBasis {
  std::vector<ProductVector> vectors;
  Dims dims;
  std::optional<int> stopper_index;
  std::string label;

  ProductBasis(std::vector<ProductVector> vectors_in, Dims dims_in,
               std::optional<int> stopper, std::string label_in);

  int size() const { return static_cast<int>(vectors.size()); }

  /// Projector onto the span of all members.
  Matrix span_projector() const;

  /// New basis keeping `indices` in the given order; the stopper index is
  /// remapped, or dropped if excluded.
  ProductBasis subset(const std::vector<int>& indices, const std::string& new_label) const;

  /// New basis with one member removed.
  ProductBasis without(int index) const;

  /// New basis with one member moved to the last position (useful for
  /// prefix-based complement constructions).
  ProductBasis moved_to_back(int index) const;
};

/// Real symmetric unit-trace PSD matrix on a bipartite space.
/// Construction validates trace (1e-12), symmetry (1e-12, then made
/// exact) and positivity (min eigenvalue >= -1e-10).
struct DensityMatrix {
  Matrix mat;
  Dims dims;

  DensityMatrix(Matrix mat_in, Dims dims_in);
};

/// |v><v| as a density matrix.
DensityMatrix pure_state(const ProductVector& v);

/// I/D on the given bipartite space.
DensityMatrix maximally_mixed(Dims dims);

/// The five-member 3x3 tiles product basis; the last member (uniform
/// superposition on both parties) is the stopper.
ProductBasis tiles_upb();

/// The seven-member 4x3 product basis (three horizontal tiles, three
/// vertical tiles, one stopper).
ProductBasis gentiles2_4x3_upb();

/// The six sign-flipped partner states spanning the common range of the
/// stopper-mixed 4x3 family.
std::vector<ProductVector> tiles_plus_partners();

/// Five product states completing the 3x3 tiles basis minus its stopper
/// to a full orthogonal product basis of 3x3.
std::vector<ProductVector> tiles_completion();

/// The 3x3 tiles basis embedded in 4x3 plus the three product states
/// |4,b> on the added row of party A (eight members total).
ProductBasis extended_tiles_4x3_upb();

/// Normalized projector onto the orthogonal complement of the basis span:
/// (I - sum |phi_i><phi_i|) / (D - n). Requires n < D.
DensityMatrix edge_state(const ProductBasis& basis);

/// Convex mixture lambda*a + (1-lambda)*b. Exact at the endpoints.
DensityMatrix mix(const DensityMatrix& a, const DensityMatrix& b, double lambda);

/// A lambda-parametrized line of states between a fixed component and an
/// edge state; at(lambda) = lambda*component + (1-lambda)*edge.
struct StateFamily {
  std::string label;
  DensityMatrix component;
  DensityMatrix edge;

  DensityMatrix at(double lambda) const { return mix(component, edge, lambda); }
};

/// lambda |psi_i><psi_i| + (1-lambda) rho_tiles, psi_index 0..4.
StateFamily rho1_family(int psi_index);

/// lambda I/9 + (1-lambda) rho_tiles.
StateFamily rho2_family();

/// lambda |4,b><4,b| + (1-lambda) rho_tiles embedded in 4x3; beta_index 0..2.
StateFamily rho3_family(int beta_index);

/// lambda |phi_7><phi_7| + (1-lambda) sigma_gentiles2.
StateFamily sigma1_family();

/// lambda P + (1-lambda) edge, where P is the normalized projector onto
/// the span of the chosen subset (0-based indices). The subset must
/// contain the basis stopper.
StateFamily sigma2_family(const ProductBasis& upb, const std::vector<int>& subset_indices);
DensityMatrix sigma2_state(const ProductBasis& upb, const std::vector<int>& subset_indices,
                           double lambda);

/// Embed a state into a larger party-A space by zero-padding.
DensityMatrix embed_party_a(const DensityMatrix& rho, int new_dim_a);

/// Complement state of the first n' basis members together with its convex
/// decomposition into the full-basis edge state and the uniform mixture of
/// the remaining members.
struct UcpbComplement {
  DensityMatrix state;
  double weight_edge;
  double weight_noise;
};

UcpbComplement ucpb_complement(const ProductBasis& upb, int prefix_count);

}  // namespace belab
