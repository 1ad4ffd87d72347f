#include "belab/certify.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "seesaw.hpp"

namespace belab {

namespace {

void require_projector(const Matrix& pi, const char* who) {
  if (pi.rows() != pi.cols()) {
    throw std::invalid_argument(std::string(who) + ": operator is not square");
  }
  if (!is_symmetric(pi)) {
    throw std::invalid_argument(std::string(who) + ": operator is not symmetric");
  }
  if ((pi * pi - pi).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument(std::string(who) + ": operator is not idempotent");
  }
}

}  // namespace

Witness::Witness(Matrix pi_in, double gamma_in, GammaKind kind)
    : pi(std::move(pi_in)), gamma(gamma_in), gamma_kind(kind) {
  require_projector(pi, "Witness");
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("Witness: gamma outside [0, 1]");
  }
}

double witness_value(const Witness& w, const DensityMatrix& rho) {
  if (w.pi.rows() != rho.mat.rows()) {
    throw std::invalid_argument("witness_value: dimension mismatch");
  }
  return w.pi.cwiseProduct(rho.mat).sum() - w.gamma;
}

GammaSearch estimate_gamma_search(const Matrix& pi, Dims dims, int restarts,
                                  std::uint64_t seed) {
  require_projector(pi, "estimate_gamma");
  if (pi.rows() != dims.total()) {
    throw std::invalid_argument("estimate_gamma: projector size does not match dims");
  }
  if (restarts < 1) {
    throw std::invalid_argument("estimate_gamma: restarts must be >= 1");
  }
  double best = 1e300;
  Vector best_alpha, best_beta;
  std::vector<double> values;
  values.reserve(restarts);
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 eng(detail::restart_seed(seed, r));
    const detail::SeesawOutcome out =
        detail::seesaw_extremize(pi, dims, eng, /*maximize=*/false);
    values.push_back(out.value);
    if (out.value < best) {
      best = out.value;
      best_alpha = out.alpha;
      best_beta = out.beta;
    }
  }
  const double clamped = std::clamp(best, 0.0, 1.0);
  return {clamped, ProductVector(std::move(best_alpha), std::move(best_beta)), restarts, seed,
          std::move(values)};
}

double estimate_gamma(const Matrix& pi, Dims dims, int restarts, std::uint64_t seed) {
  return estimate_gamma_search(pi, dims, restarts, seed).value;
}

Detector choi_u_detector() {
  return {"choi-u", [](const DensityMatrix& rho) { return choi_u_detect(rho); }};
}

Detector pt_min_eig_detector() {
  return {"pt-mineig", [](const DensityMatrix& rho) { return min_eig(partial_transpose(rho)); }};
}

Detector witness_detector(Witness w) {
  return {"witness",
          [w = std::move(w)](const DensityMatrix& rho) { return witness_value(w, rho); }};
}

SweepResult sweep(const std::string& family_label, const StateConstructor& family,
                  const std::vector<double>& grid, const Detector& detector) {
  if (grid.empty()) {
    throw std::invalid_argument("sweep: empty grid");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0 || grid[i] > 1.0) {
      throw std::invalid_argument("sweep: grid values must lie in [0, 1]");
    }
    if (i > 0 && grid[i] <= grid[i - 1]) {
      throw std::invalid_argument("sweep: grid must be strictly increasing");
    }
  }

  SweepResult result;
  result.family_label = family_label;
  result.detector_label = detector.label;
  result.lambdas = grid;
  result.values.reserve(grid.size());
  for (double lambda : grid) {
    result.values.push_back(detector.fn(family(lambda)));
  }

  const auto negative = [](double v) { return v < -kDetectionTol; };
  int changes = 0;
  std::size_t change_at = 0;
  for (std::size_t i = 0; i + 1 < result.values.size(); ++i) {
    if (negative(result.values[i]) != negative(result.values[i + 1])) {
      ++changes;
      change_at = i;
    }
  }
  result.sign_changes = changes;
  if (changes == 1) {
    double lo = grid[change_at];
    double hi = grid[change_at + 1];
    const bool lo_negative = negative(result.values[change_at]);
    for (int it = 0; it < 50 && (hi - lo) >= 1e-10; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (negative(detector.fn(family(mid))) == lo_negative) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    result.threshold = 0.5 * (lo + hi);
  }
  return result;
}

SweepResult sweep(const StateFamily& family, const std::vector<double>& grid,
                  const Detector& detector) {
  return sweep(family.label, [&family](double l) { return family.at(l); }, grid, detector);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::separable_undetected: return "separable-undetected";
    case Verdict::entangled_ppt: return "entangled-PPT";
    case Verdict::npt: return "NPT";
  }
  return "unknown";
}

CertifyReport certify_state(const DensityMatrix& rho, const CertifyOptions& options) {
  CertifyReport report;
  report.ppt = is_ppt(rho, options.tol);
  if (rho.dims.b == 3) {
    report.choi_u = choi_u_detect(rho);
  }
  if (options.witness) {
    report.witness = witness_value(*options.witness, rho);
    report.witness_gamma_kind = options.witness->gamma_kind;
  }
  if (!report.ppt) {
    report.verdict = Verdict::npt;
  } else {
    const bool choi_hit = report.choi_u && *report.choi_u < -options.tol;
    const bool witness_hit = report.witness && *report.witness < -options.tol &&
                             report.witness_gamma_kind == GammaKind::supplied;
    report.verdict =
        (choi_hit || witness_hit) ? Verdict::entangled_ppt : Verdict::separable_undetected;
  }
  return report;
}

}  // namespace belab
