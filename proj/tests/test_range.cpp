#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "belab/catalog.hpp"
#include "belab/range.hpp"
#include "test_oracles.hpp"

using namespace belab;

TEST_CASE("range_projector") {
  const DensityMatrix unif = maximally_mixed({3, 3});
  CHECK((range_projector(unif) - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() <= 1e-12);

  const ProductBasis tiles = tiles_upb();
  const Matrix expected = Matrix::Identity(9, 9) - tiles.span_projector();
  CHECK((range_projector(edge_state(tiles)) - expected).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(rank(range_projector(edge_state(tiles))) == 4);

  const DensityMatrix pure = pure_state(tiles.vectors[0]);
  CHECK(rank(range_projector(pure)) == 1);
}

TEST_CASE("check_range_criterion on the stopper-mixed 4x3 family") {
  const DensityMatrix s1 = sigma1_family().at(0.1);
  const RangeReport report = check_range_criterion(s1, tiles_plus_partners());
  CHECK(report.state_rank == 6);
  CHECK(report.candidates_in_range == 6);
  CHECK(report.span_rank_of_candidates == 6);
  CHECK(report.verdict == RangeVerdict::satisfied_by_candidates);
}

TEST_CASE("check_range_criterion rejects edge-state candidates") {
  const DensityMatrix rho = edge_state(tiles_upb());
  std::mt19937_64 eng(17);
  std::vector<ProductVector> candidates;
  for (int i = 0; i < 8; ++i) candidates.push_back(test::random_product(eng, {3, 3}));
  const RangeReport report = check_range_criterion(rho, candidates);
  CHECK(report.candidates_in_range == 0);
  CHECK(report.verdict == RangeVerdict::candidates_insufficient);

  // searched candidates give the same verdict: the complement of a UPB span
  // holds no product vector at all
  const ProductSearchResult found =
      product_search(range_projector(rho), rho.dims, 100, 42);
  std::vector<ProductVector> searched;
  for (const auto& h : found.found) searched.push_back(h.vector);
  CHECK(check_range_criterion(rho, searched).verdict ==
        RangeVerdict::candidates_insufficient);
}

TEST_CASE("check_range_criterion on full-rank states") {
  std::vector<ProductVector> computational;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vector a = Vector::Zero(3), b = Vector::Zero(3);
      a(i) = 1.0;
      b(j) = 1.0;
      computational.emplace_back(a, b);
    }
  }
  CHECK(check_range_criterion(maximally_mixed({3, 3}), computational).verdict ==
        RangeVerdict::satisfied_by_candidates);
  // rho2(lambda) is full rank, so the computational basis spans its range too
  CHECK(check_range_criterion(rho2_family().at(0.3), computational).verdict ==
        RangeVerdict::satisfied_by_candidates);
}

TEST_CASE("check_range_criterion product-deficit path") {
  const DensityMatrix r3 = rho3_family(0).at(0.5);
  Vector a = Vector::Zero(4), b = Vector::Zero(3);
  a(3) = 1.0;
  b(0) = 1.0;
  const RangeReport report = check_range_criterion(r3, {ProductVector(a, b)});
  CHECK(report.state_rank == 5);
  CHECK(report.candidates_in_range == 1);
  CHECK(report.span_rank_of_candidates == 1);
  CHECK(report.verdict == RangeVerdict::product_deficit_evidence);
}

TEST_CASE("check_range_criterion refuses non-PT-invariant states") {
  Vector bell = Vector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const DensityMatrix p(bell * bell.transpose(), {2, 2});
  CHECK_THROWS_AS(check_range_criterion(p, {}), std::invalid_argument);
}

TEST_CASE("product_search on the full space finds unit-overlap vectors") {
  const ProductSearchResult res =
      product_search(Matrix::Identity(9, 9), {3, 3}, 20, 42);
  CHECK(res.best_overlap == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(res.found.size() >= 1);
  for (const auto& h : res.found) {
    CHECK(h.overlap > 1.0 - 1e-8);
  }
}

TEST_CASE("product_search finds nothing inside a UPB complement") {
  const Matrix support = Matrix::Identity(9, 9) - tiles_upb().span_projector();
  const ProductSearchResult res = product_search(support, {3, 3}, 200, 42);
  CHECK(res.found.empty());
  // best overlap is 1 - gamma, reproducibly below 1
  CHECK(res.best_overlap < 1.0 - 1e-2);
  CHECK(res.best_overlap == doctest::Approx(1.0 - 0.028416213335730474).epsilon(1e-6));

  const ProductSearchResult again = product_search(support, {3, 3}, 200, 42);
  CHECK(res.best_overlap == again.best_overlap);

  const DensityMatrix ext_edge = edge_state(extended_tiles_4x3_upb());
  const ProductSearchResult ext =
      product_search(range_projector(ext_edge), ext_edge.dims, 100, 42);
  CHECK(ext.found.empty());
  CHECK(ext.best_overlap < 1.0 - 1e-2);
}

TEST_CASE("product_search residuals stay tiny") {
  const DensityMatrix r3 = rho3_family(0).at(0.5);
  const Matrix p = range_projector(r3);
  const ProductSearchResult res = product_search(p, r3.dims, 200, 42);
  REQUIRE(res.found.size() == 1);  // |4,1> is the only product vector in range
  for (const auto& h : res.found) {
    const Vector f = h.vector.full();
    REQUIRE(((Matrix::Identity(12, 12) - p) * f).norm() <= 1e-6);
  }
  CHECK(std::abs(res.found[0].vector.alpha(3)) == doctest::Approx(1.0).epsilon(1e-8));

  std::vector<Vector> fulls;
  for (const auto& h : res.found) fulls.push_back(h.vector.full());
  CHECK(static_cast<int>(orthonormalize(fulls).size()) < rank(r3.mat));
}

TEST_CASE("product_search input validation") {
  CHECK_THROWS_AS(product_search(Matrix::Identity(8, 8), {3, 3}, 10), std::invalid_argument);
  CHECK_THROWS_AS(product_search(0.5 * Matrix::Identity(9, 9), {3, 3}, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(product_search(Matrix::Identity(9, 9), {3, 3}, 0), std::invalid_argument);
}

TEST_CASE("verify_completion accepts the two catalog completions") {
  const ProductBasis tiles = tiles_upb();
  const ProductBasis tiles_minus = tiles.subset({0, 1, 2, 3}, "tiles-minus-stopper");
  CHECK(verify_completion(tiles_minus, tiles_completion()));

  const ProductBasis g = gentiles2_4x3_upb();
  const ProductBasis g_minus = g.subset({0, 1, 2, 3, 4, 5}, "gentiles2-minus-stopper");
  CHECK(verify_completion(g_minus, tiles_plus_partners()));

  // a full UPB cannot be completed by anything
  CHECK_FALSE(verify_completion(tiles, {tiles_completion()[0], tiles_completion()[1],
                                        tiles_completion()[2], tiles_completion()[3]}));
  std::vector<ProductVector> computational;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Vector a = Vector::Zero(3), b = Vector::Zero(3);
      a(i) = 1.0;
      b(j) = 1.0;
      computational.emplace_back(a, b);
    }
  }
  CHECK_FALSE(verify_completion(tiles, computational));

  // wrong count fails even when everything is orthogonal
  CHECK_FALSE(verify_completion(tiles_minus, tiles_plus_partners()));
}

TEST_CASE("a verified completion spans the whole space") {
  const ProductBasis g_minus =
      gentiles2_4x3_upb().subset({0, 1, 2, 3, 4, 5}, "gentiles2-minus-stopper");
  REQUIRE(verify_completion(g_minus, tiles_plus_partners()));
  std::vector<Vector> fulls;
  for (const auto& v : g_minus.vectors) fulls.push_back(v.full());
  for (const auto& v : tiles_plus_partners()) fulls.push_back(v.full());
  CHECK((projector_onto_span(fulls) - Matrix::Identity(12, 12)).cwiseAbs().maxCoeff() <=
        1e-10);
}

TEST_CASE("max_orthogonal_subset") {
  Vector e0 = Vector::Zero(3), e1 = Vector::Zero(3), mixed(3);
  e0(0) = 1.0;
  e1(1) = 1.0;
  mixed << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0;
  CHECK(max_orthogonal_subset({e0, e1, mixed}) == 2);
  CHECK(max_orthogonal_subset({}) == 0);
  CHECK(max_orthogonal_subset({e0}) == 1);
}

TEST_CASE("ucpb_evidence separates the two one-state removals") {
  const ProductBasis g = gentiles2_4x3_upb();

  const UcpbEvidence minus_first = ucpb_evidence(g.without(0), 200, 42);
  CHECK(minus_first.complement_dim == 6);
  REQUIRE(minus_first.choi_u.has_value());
  CHECK(*minus_first.choi_u < -1e-8);  // complement state entangled => UCPB
  CHECK(minus_first.found_count < minus_first.complement_dim);
  CHECK(minus_first.product_deficit);
  CHECK_FALSE(minus_first.completable);

  const UcpbEvidence minus_stopper = ucpb_evidence(g.without(6), 200, 42);
  CHECK(minus_stopper.complement_dim == 6);
  CHECK(minus_stopper.orthogonal_found_count == 6);
  CHECK(minus_stopper.completable);
  REQUIRE(minus_stopper.choi_u.has_value());
  CHECK(*minus_stopper.choi_u >= 0.0);

  const UcpbEvidence tiles_minus_stopper =
      ucpb_evidence(tiles_upb().subset({0, 1, 2, 3}, "tiles-minus-stopper"), 200, 42);
  CHECK(tiles_minus_stopper.complement_dim == 5);
  CHECK(tiles_minus_stopper.completable);
}
