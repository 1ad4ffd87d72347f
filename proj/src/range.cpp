#include "belab/range.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

#include "belab/maps.hpp"
#include "seesaw.hpp"

namespace belab {

namespace {

// Flip the sign so the largest-magnitude entry is positive; ties resolve to
// the earliest index, keeping the canonical form deterministic.
Vector canonical_sign(Vector v) {
  int arg = 0;
  double best = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best + 1e-15) {
      best = std::abs(v(i));
      arg = i;
    }
  }
  if (v(arg) < 0) v = -v;
  return v;
}

bool same_up_to_sign(const ProductVector& x, const ProductVector& y) {
  return std::abs(x.alpha.dot(y.alpha) * x.beta.dot(y.beta)) > 1.0 - 1e-6;
}

int lex_compare(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i)) return -1;
    if (a(i) > b(i)) return 1;
  }
  return 0;
}

int max_orthogonal_subset_exact(const std::vector<Vector>& vectors, double tol) {
  const int n = static_cast<int>(vectors.size());
  std::vector<std::uint32_t> compatible(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && std::abs(vectors[i].dot(vectors[j])) <= tol) {
        compatible[i] |= 1u << j;
      }
    }
  }
  int best = 0;
  // Depth-first over candidate sets; `allowed` holds vectors orthogonal to
  // everything picked so far.
  auto dfs = [&](auto&& self, int picked, std::uint32_t allowed) -> void {
    best = std::max(best, picked);
    while (allowed) {
      const int i = std::countr_zero(allowed);
      allowed &= allowed - 1;
      if (picked + 1 + std::popcount(allowed & compatible[i]) <= best) continue;
      self(self, picked + 1, allowed & compatible[i]);
    }
  };
  dfs(dfs, 0, (1u << n) - 1);
  return best;
}

}  // namespace

Matrix range_projector(const DensityMatrix& rho, double tol) {
  if (tol <= 0) {
    throw std::invalid_argument("range_projector: tolerance must be positive");
  }
  const EigenDecomposition eig = eig_sym(rho.mat);
  Matrix p = Matrix::Zero(rho.mat.rows(), rho.mat.cols());
  for (int k = 0; k < eig.eigenvalues.size(); ++k) {
    if (eig.eigenvalues(k) > tol) {
      const Vector v = eig.eigenvectors.col(k);
      p += v * v.transpose();
    }
  }
  return p;
}

std::string to_string(RangeVerdict v) {
  switch (v) {
    case RangeVerdict::satisfied_by_candidates: return "satisfied-by-candidates";
    case RangeVerdict::candidates_insufficient: return "candidates-insufficient";
    case RangeVerdict::product_deficit_evidence: return "product-deficit-evidence";
  }
  return "unknown";
}

RangeReport check_range_criterion(const DensityMatrix& rho,
                                  const std::vector<ProductVector>& candidates) {
  if ((rho.mat - partial_transpose(rho)).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument(
        "check_range_criterion: state is not partial-transpose invariant; "
        "this one-sided check does not apply (the general two-sided check is "
        "out of scope)");
  }
  RangeReport report;
  report.state_rank = rank(rho.mat);
  const Matrix p = range_projector(rho);
  const Matrix residual_op = Matrix::Identity(p.rows(), p.cols()) - p;

  std::vector<Vector> in_range;
  for (const ProductVector& c : candidates) {
    if (!(c.dims() == rho.dims)) {
      throw std::invalid_argument("check_range_criterion: candidate dimension mismatch");
    }
    const Vector f = c.full();
    if ((residual_op * f).norm() <= 1e-8) {
      in_range.push_back(f);
    }
  }
  report.candidates_in_range = static_cast<int>(in_range.size());
  report.span_rank_of_candidates =
      in_range.empty() ? 0 : static_cast<int>(orthonormalize(in_range).size());

  const bool all_in_range = report.candidates_in_range == static_cast<int>(candidates.size());
  if (all_in_range && !candidates.empty() &&
      report.span_rank_of_candidates == report.state_rank) {
    report.verdict = RangeVerdict::satisfied_by_candidates;
  } else if (report.candidates_in_range == 0) {
    report.verdict = RangeVerdict::candidates_insufficient;
  } else if (report.span_rank_of_candidates < report.state_rank) {
    report.verdict = RangeVerdict::product_deficit_evidence;
  } else {
    report.verdict = RangeVerdict::candidates_insufficient;
  }
  return report;
}

ProductSearchResult product_search(const Matrix& p, Dims dims, int restarts,
                                   std::uint64_t seed) {
  if (p.rows() != p.cols() || p.rows() != dims.total()) {
    throw std::invalid_argument("product_search: operator size does not match dims");
  }
  if (!is_symmetric(p) || (p * p - p).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("product_search: operator is not a projector");
  }
  if (restarts < 1) {
    throw std::invalid_argument("product_search: restarts must be >= 1");
  }

  ProductSearchResult result;
  result.restarts = restarts;
  result.seed = seed;
  result.best_overlap = -1e300;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 eng(detail::restart_seed(seed, r));
    const detail::SeesawOutcome out =
        detail::seesaw_extremize(p, dims, eng, /*maximize=*/true);
    result.best_overlap = std::max(result.best_overlap, out.value);
    if (out.value > 1.0 - 1e-8) {
      ProductVector hit(canonical_sign(out.alpha), canonical_sign(out.beta));
      const bool duplicate =
          std::any_of(result.found.begin(), result.found.end(),
                      [&hit](const ProductSearchHit& h) { return same_up_to_sign(h.vector, hit); });
      if (!duplicate) {
        result.found.push_back({std::move(hit), out.value});
      }
    }
  }
  std::sort(result.found.begin(), result.found.end(),
            [](const ProductSearchHit& x, const ProductSearchHit& y) {
              if (x.overlap != y.overlap) return x.overlap > y.overlap;
              const int ca = lex_compare(x.vector.alpha, y.vector.alpha);
              if (ca != 0) return ca < 0;
              return lex_compare(x.vector.beta, y.vector.beta) < 0;
            });
  return result;
}

bool verify_completion(const ProductBasis& basis,
                       const std::vector<ProductVector>& completion) {
  std::vector<Vector> fulls;
  for (const ProductVector& v : basis.vectors) fulls.push_back(v.full());
  for (const ProductVector& v : completion) {
    if (!(v.dims() == basis.dims)) return false;
    fulls.push_back(v.full());
  }
  if (static_cast<int>(fulls.size()) != basis.dims.total()) return false;
  for (std::size_t i = 0; i < fulls.size(); ++i) {
    for (std::size_t j = i + 1; j < fulls.size(); ++j) {
      if (std::abs(fulls[i].dot(fulls[j])) > 1e-10) return false;
    }
  }
  return true;
}

int max_orthogonal_subset(const std::vector<Vector>& vectors, double tol) {
  if (vectors.size() <= 1) return static_cast<int>(vectors.size());
  if (vectors.size() <= 20) {
    return max_orthogonal_subset_exact(vectors, tol);
  }
  // Greedy fallback seeded from every starting vector.
  int best = 0;
  for (std::size_t s = 0; s < vectors.size(); ++s) {
    std::vector<const Vector*> kept{&vectors[s]};
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (i == s) continue;
      const bool ok = std::all_of(kept.begin(), kept.end(), [&](const Vector* q) {
        return std::abs(q->dot(vectors[i])) <= tol;
      });
      if (ok) kept.push_back(&vectors[i]);
    }
    best = std::max<int>(best, static_cast<int>(kept.size()));
  }
  return best;
}

UcpbEvidence ucpb_evidence(const ProductBasis& basis_subset, int restarts,
                           std::uint64_t seed) {
  const int d = basis_subset.dims.total();
  if (basis_subset.size() >= d) {
    throw std::invalid_argument("ucpb_evidence: set spans the whole space");
  }
  const Matrix complement =
      Matrix::Identity(d, d) - basis_subset.span_projector();

  UcpbEvidence ev;
  ev.complement_dim = d - basis_subset.size();
  ev.restarts = restarts;
  ev.seed = seed;

  const DensityMatrix state(complement / ev.complement_dim, basis_subset.dims);
  if (basis_subset.dims.b == 3) {
    ev.choi_u = choi_u_detect(state);
  }

  const ProductSearchResult search = product_search(complement, basis_subset.dims,
                                                    restarts, seed);
  ev.best_overlap = search.best_overlap;
  ev.found_count = static_cast<int>(search.found.size());
  std::vector<Vector> fulls;
  fulls.reserve(search.found.size());
  for (const ProductSearchHit& h : search.found) fulls.push_back(h.vector.full());
  ev.orthogonal_found_count = max_orthogonal_subset(fulls);
  ev.product_deficit = ev.found_count < ev.complement_dim;
  ev.completable = ev.orthogonal_found_count == ev.complement_dim;
  return ev;
}

}  // namespace belab
