#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "sparsesrc/helmholtz.hpp"
#include "sparsesrc/medium.hpp"

// Independent reference computations: brute-force minimisation on small dense
// problems, Bessel/Hankel functions from series, and peak detection/matching
// for scoring reconstructions. Nothing here calls the Newton solver.
namespace sparsesrc::oracle {

inline constexpr Index kDenseOracleMaxNodes = 64;

/// Real 2N x 2N block form [[Re, -Im], [Im, Re]] of a complex matrix.
Eigen::MatrixXd real_block(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd dense_matrix(const HelmholtzOperator& op);

struct DenseProblem {
  Eigen::MatrixXcd d;  // N x N, N <= 64
  RealVector data;     // U, length 2N
  double gamma = 1.0;
  double alpha = 1.0;
};

struct DenseMinimizeOptions {
  double grad_tol = 1e-10;
  long max_iterations = 2'000'000;
};

struct DenseMinimum {
  RealVector y;
  double objective = 0.0;
  double grad_norm = 0.0;
  long iterations = 0;
};

/// Objective 1/2|D^T y + U|^2 + gamma/2 |(y - alpha)_+|^2
///           + gamma/2 |(y + alpha)_-|^2  (D in real block form).
double my_objective(const DenseProblem& p, const RealVector& y);
RealVector my_gradient(const DenseProblem& p, const RealVector& y);

/// Nonlinear conjugate gradients (Polak-Ribiere+, steepest-descent restarts)
/// with an exact line search on the piecewise quadratic objective; stops at
/// |grad|_2 <= grad_tol. Throws Error(kNotConverged) at the iteration cap.
DenseMinimum dense_my_minimize(const DenseProblem& p, const RealVector& start,
                               const DenseMinimizeOptions& options = {});
DenseMinimum dense_my_minimize(const DenseProblem& p,
                               const DenseMinimizeOptions& options = {});

// Bessel functions of order zero. Power series up to kBesselSeriesLimit, the
// Hankel asymptotic expansion (optimally truncated) beyond.
inline constexpr double kBesselSeriesLimit = 8.0;

double bessel_j0_series(double x);
double bessel_y0_series(double x);
double bessel_j0_prime_series(double x);
double bessel_y0_prime_series(double x);
std::complex<double> hankel_h0_asymptotic(double x);

double bessel_j0(double x);
double bessel_y0(double x);
/// H0^(1)(x) = J0(x) + i Y0(x), x > 0.
std::complex<double> hankel_h0(double x);

struct Detection {
  Index node = 0;
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
};

struct PeakMatch {
  PeakSpec truth;
  bool matched = false;
  Detection detection;
  double distance = 0.0;  // Euclidean, in length units
  bool sign_ok = false;
};

struct PeakMatchReport {
  std::vector<PeakMatch> peaks;
  std::vector<Detection> detections;
  int matched = 0;
  int sign_hits = 0;
  int spurious = 0;
  double match_radius = 0.0;
  /// Largest matched distance divided by the grid spacing.
  double max_distance_cells = 0.0;
};

struct PeakMatchOptions {
  double relative_threshold = 0.1;
  /// Detections farther than this from every true centre count as spurious.
  /// Non-positive means half of the smallest distance between true centres.
  double match_radius = 0.0;
};

/// Local maxima of |mu| over 3x3 neighbourhoods above the threshold fraction
/// of max|mu|, in decreasing order; plateaus keep one node.
std::vector<Detection> detect_peaks(const RealField& mu, double relative_threshold);

PeakMatchReport peak_match(const RealField& mu, const std::vector<PeakSpec>& truth,
                           const PeakMatchOptions& options = {});

/// Number of nodes with |mu| above `fraction` of max|mu|.
Index support_size(const RealVector& mu, double fraction);

}  // namespace sparsesrc::oracle
