#pragma once

#include <Eigen/Dense>

#include <stdexcept>

namespace belab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bipartite dimension split: party A has dimension `a`, party B has `b`.
struct Dims {
  int a = 0;
  int b = 0;

  int total() const { return a * b; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

/// Values below -kDetectionTol count as a negative detector outcome;
/// one order of magnitude above the eigensolver error floor.
inline constexpr double kDetectionTol = 1e-10;

/// Numerical rank cutoff. The catalog's nonzero eigenvalues are >= 1/8,
/// so this separates cleanly.
inline constexpr double kDefaultRankTol = 1e-8;

/// Thrown when an eigensolver fails to converge (CLI exit code 3).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace belab
