#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "belab/catalog.hpp"
#include "belab/types.hpp"

namespace belab {

/// Projector onto the span of eigenvectors with eigenvalue > tol.
Matrix range_projector(const DensityMatrix& rho, double tol = kDefaultRankTol);

enum class RangeVerdict {
  satisfied_by_candidates,
  candidates_insufficient,
  product_deficit_evidence,
};

std::string to_string(RangeVerdict v);

/// - satisfied-by-candidates: every candidate lies in the range (residual
///   <= 1e-8) and the in-range candidates span it completely.
/// - candidates-insufficient: no candidate lies in the range, or the list
///   mixes out-of-range vectors with a spanning in-range subset.
/// - product-deficit-evidence: some candidates lie in the range but their
///   span falls short of the state rank.
struct RangeReport {
  int state_rank = 0;
  int candidates_in_range = 0;
  int span_rank_of_candidates = 0;
  RangeVerdict verdict = RangeVerdict::candidates_insufficient;
};

/// One-sided real range check; applies only to partial-transpose-invariant
/// states (checked at 1e-10) where product states spanning the range settle
/// the criterion.
RangeReport check_range_criterion(const DensityMatrix& rho,
                                  const std::vector<ProductVector>& candidates);

/// Multistart alternating maximization of <a x b| P |a x b>. Local maxima
/// with overlap above 1 - 1e-8 are collected as product vectors inside the
/// range of P, deduplicated up to sign at 1e-6 and returned in a canonical
/// order. Absence of hits is evidence, not proof.
struct ProductSearchHit {
  ProductVector vector;
  double overlap;
};

struct ProductSearchResult {
  std::vector<ProductSearchHit> found;
  double best_overlap = 0.0;
  int restarts = 0;
  std::uint64_t seed = 0;
};

ProductSearchResult product_search(const Matrix& p, Dims dims, int restarts = 200,
                                   std::uint64_t seed = 42);

/// True iff basis and completion together are d1*d2 pairwise-orthogonal
/// product vectors.
bool verify_completion(const ProductBasis& basis,
                       const std::vector<ProductVector>& completion);

/// Largest mutually orthogonal subset of the given vectors (exact for up to
/// 20 vectors, greedy beyond).
int max_orthogonal_subset(const std::vector<Vector>& vectors, double tol = 1e-8);

/// Evidence record for whether a proper orthogonal product set leaves an
/// uncompletable complement: the normalized complement projector state, the
/// Choi-map detector on it (party B of dimension 3 only), and the product
/// vectors a multistart search finds in the complement.
struct UcpbEvidence {
  int complement_dim = 0;
  std::optional<double> choi_u;
  double best_overlap = 0.0;
  int found_count = 0;
  int orthogonal_found_count = 0;
  bool product_deficit = false;
  bool completable = false;
  int restarts = 0;
  std::uint64_t seed = 0;
};

UcpbEvidence ucpb_evidence(const ProductBasis& basis_subset, int restarts = 200,
                           std::uint64_t seed = 42);

}  // namespace belab
