#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "belab/catalog.hpp"
#include "belab/maps.hpp"
#include "belab/types.hpp"

namespace belab {

enum class GammaKind { supplied, estimated };

/// W = Pi - gamma*I with Pi a projector and gamma in [0, 1].
struct Witness {
  Matrix pi;
  double gamma;
  GammaKind gamma_kind;

  Witness(Matrix pi_in, double gamma_in, GammaKind kind);
};

/// Tr[W rho] = Tr[Pi rho] - gamma. Negative values certify entanglement
/// only for supplied (trusted) gamma.
double witness_value(const Witness& w, const DensityMatrix& rho);

/// Multistart alternating minimization of <a x b| Pi |a x b> over real
/// unit product vectors: fix one factor, compress Pi onto the other party,
/// take the minimal eigenvector; alternate until the value moves by less
/// than 1e-12 or 500 iterations pass. Restart r uses a seed derived from
/// the base seed by counter. The result is an upper bound on the true
/// minimum.
struct GammaSearch {
  double value;
  ProductVector minimizer;
  int restarts;
  std::uint64_t seed;
  std::vector<double> restart_values;
};

GammaSearch estimate_gamma_search(const Matrix& pi, Dims dims, int restarts = 200,
                                  std::uint64_t seed = 42);
double estimate_gamma(const Matrix& pi, Dims dims, int restarts = 200,
                      std::uint64_t seed = 42);

/// A named scalar functional of a state, evaluated along sweeps.
struct Detector {
  std::string label;
  std::function<double(const DensityMatrix&)> fn;
};

Detector choi_u_detector();
Detector pt_min_eig_detector();
Detector witness_detector(Witness w);

/// Detector values over a lambda grid. `threshold` is filled by bisection
/// (50 iterations or interval below 1e-10) only when the grid shows exactly
/// one sign change; with several sign changes the raw values are returned
/// and `sign_changes` flags the count.
struct SweepResult {
  std::string family_label;
  std::vector<double> lambdas;
  std::vector<double> values;
  std::optional<double> threshold;
  std::string detector_label;
  int sign_changes = 0;
};

using StateConstructor = std::function<DensityMatrix(double)>;

SweepResult sweep(const std::string& family_label, const StateConstructor& family,
                  const std::vector<double>& grid, const Detector& detector);
SweepResult sweep(const StateFamily& family, const std::vector<double>& grid,
                  const Detector& detector);

/// Aggregated verdict. "entangled-PPT" requires PPT plus either a negative
/// Choi-map detector value or a negative witness value with supplied gamma;
/// estimated gamma never certifies (it is only an upper bound).
enum class Verdict { separable_undetected, entangled_ppt, npt };

std::string to_string(Verdict v);

struct CertifyOptions {
  std::optional<Witness> witness;
  double tol = kDetectionTol;
};

struct CertifyReport {
  bool ppt = false;
  std::optional<double> choi_u;
  std::optional<double> witness;
  std::optional<GammaKind> witness_gamma_kind;
  Verdict verdict = Verdict::separable_undetected;
};

CertifyReport certify_state(const DensityMatrix& rho, const CertifyOptions& options = {});

}  // namespace belab
