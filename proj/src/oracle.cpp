#include "sparsesrc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "sparsesrc/error.hpp"

namespace sparsesrc::oracle {

Eigen::MatrixXd real_block(const Eigen::MatrixXcd& m) {
  const Index r = m.rows();
  const Index c = m.cols();
  Eigen::MatrixXd b(2 * r, 2 * c);
  b.topLeftCorner(r, c) = m.real();
  b.topRightCorner(r, c) = -m.imag();
  b.bottomLeftCorner(r, c) = m.imag();
  b.bottomRightCorner(r, c) = m.real();
  return b;
}

Eigen::MatrixXcd dense_matrix(const HelmholtzOperator& op) {
  return Eigen::MatrixXcd(op.matrix());
}

// --- Moreau-Yosida objective ----------------------------------------------

namespace {

struct BlockForm {
  Eigen::MatrixXd d;  // real block of D
  Eigen::MatrixXd dt;
};

BlockForm block_form(const DenseProblem& p) {
  if (p.d.rows() != p.d.cols() || p.d.rows() > kDenseOracleMaxNodes) {
    throw Error(ErrorCode::kTooLarge, "dense oracle needs a square D with N <= 64");
  }
  if (p.data.size() != 2 * p.d.rows()) {
    throw Error(ErrorCode::kSizeMismatch, "dense oracle data must have length 2N");
  }
  if (!(p.gamma > 0.0) || !(p.alpha > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "dense oracle needs gamma, alpha > 0");
  }
  BlockForm f;
  f.d = real_block(p.d);
  f.dt = f.d.transpose();
  return f;
}

double objective(const BlockForm& f, const DenseProblem& p, const RealVector& y) {
  const RealVector fit = f.dt * y + p.data;
  double pen = 0.0;
  for (Index i = 0; i < y.size(); ++i) {
    const double up = std::max(0.0, y[i] - p.alpha);
    const double lo = std::min(0.0, y[i] + p.alpha);
    pen += up * up + lo * lo;
  }
  return 0.5 * fit.squaredNorm() + 0.5 * p.gamma * pen;
}

RealVector gradient(const BlockForm& f, const DenseProblem& p, const RealVector& y) {
  RealVector g = f.d * (f.dt * y + p.data);
  for (Index i = 0; i < y.size(); ++i) {
    g[i] += p.gamma * (std::max(0.0, y[i] - p.alpha) + std::min(0.0, y[i] + p.alpha));
  }
  return g;
}

// Exact minimiser over t >= 0 of the convex piecewise quadratic
// phi(t) = objective(y + t d). phi' is continuous, piecewise linear and
// non-decreasing, with kinks where a component crosses +-alpha.
double exact_line_search(const BlockForm& f, const DenseProblem& p, const RealVector& y,
                         const RealVector& dir) {
  const RealVector fit = f.dt * y + p.data;
  const RealVector fit_dir = f.dt * dir;
  const double quad = fit_dir.squaredNorm();
  const double lin = fit_dir.dot(fit);
  auto slope = [&](double t) {
    double s = lin + t * quad;
    for (Index i = 0; i < y.size(); ++i) {
      const double yi = y[i] + t * dir[i];
      s += p.gamma * dir[i] * (std::max(0.0, yi - p.alpha) + std::min(0.0, yi + p.alpha));
    }
    return s;
  };
  std::vector<double> kinks;
  for (Index i = 0; i < y.size(); ++i) {
    if (dir[i] == 0.0) continue;
    for (double bound : {p.alpha, -p.alpha}) {
      const double t = (bound - y[i]) / dir[i];
      if (t > 0.0) kinks.push_back(t);
    }
  }
  std::sort(kinks.begin(), kinks.end());
  double lo = 0.0;
  double slope_lo = slope(0.0);
  if (slope_lo >= 0.0) return 0.0;
  for (double t : kinks) {
    const double s = slope(t);
    if (s >= 0.0) {
      return lo + (t - lo) * (-slope_lo) / (s - slope_lo);
    }
    lo = t;
    slope_lo = s;
  }
  // Past the last kink phi' is linear.
  const double curvature = slope(lo + 1.0) - slope_lo;
  if (!(curvature > 0.0)) return lo;
  return lo - slope_lo / curvature;
}

}  // namespace

double my_objective(const DenseProblem& p, const RealVector& y) {
  return objective(block_form(p), p, y);
}

RealVector my_gradient(const DenseProblem& p, const RealVector& y) {
  return gradient(block_form(p), p, y);
}

DenseMinimum dense_my_minimize(const DenseProblem& p, const RealVector& start,
                               const DenseMinimizeOptions& options) {
  const BlockForm f = block_form(p);
  if (start.size() != p.data.size()) {
    throw Error(ErrorCode::kSizeMismatch, "dense oracle start has the wrong length");
  }
  const Index n = start.size();
  DenseMinimum out;
  out.y = start;
  RealVector g = gradient(f, p, out.y);
  RealVector dir = -g;
  double gg = g.squaredNorm();
  long since_restart = 0;
  for (long it = 0; it < options.max_iterations; ++it) {
    out.grad_norm = std::sqrt(gg);
    out.iterations = it;
    if (out.grad_norm <= options.grad_tol) {
      out.objective = objective(f, p, out.y);
      return out;
    }
    if (dir.dot(g) >= 0.0) dir = -g;
    const double t = exact_line_search(f, p, out.y, dir);
    out.y += t * dir;
    const RealVector g_next = gradient(f, p, out.y);
    const double gg_next = g_next.squaredNorm();
    double beta = std::max(0.0, g_next.dot(g_next - g) / gg);
    if (++since_restart >= n || t == 0.0) {
      beta = 0.0;
      since_restart = 0;
    }
    dir = -g_next + beta * dir;
    g = g_next;
    gg = gg_next;
  }
  std::ostringstream msg;
  msg << "dense oracle stopped at the iteration cap with gradient norm "
      << std::sqrt(gg);
  throw Error(ErrorCode::kNotConverged, msg.str());
}

DenseMinimum dense_my_minimize(const DenseProblem& p, const DenseMinimizeOptions& options) {
  return dense_my_minimize(p, RealVector::Zero(p.data.size()), options);
}

// --- Bessel functions -----------------------------------------------------

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

void check_positive(double x) {
  if (!(x > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "Bessel argument must be positive");
  }
}

}  // namespace

double bessel_j0_series(double x) {
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum) && k > 2) break;
  }
  return sum;
}

double bessel_y0_series(double x) {
  check_positive(x);
  const double q = 0.25 * x * x;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    sum -= term * harmonic;  // (-1)^(k+1) H_k q^k / (k!)^2
    if (std::abs(term * harmonic) < 1e-17 * (std::abs(sum) + 1.0) && k > 2) break;
  }
  return (2.0 / std::numbers::pi) *
         ((std::log(0.5 * x) + kEulerGamma) * bessel_j0_series(x) + sum);
}

double bessel_j0_prime_series(double x) {
  // d/dx sum (-1)^k (x/2)^{2k} / (k!)^2 = sum (-1)^k k (x/2)^{2k-1} / (k!)^2
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;  // (-1)^k q^k / (k!)^2
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    const double d = term * k / half;
    sum += d;
    if (std::abs(d) < 1e-17 * (std::abs(sum) + 1e-300) && k > 2) break;
  }
  return sum;
}

double bessel_y0_prime_series(double x) {
  check_positive(x);
  const double half = 0.5 * x;
  const double q = half * half;
  double term = 1.0;
  double harmonic = 0.0;
  double sum = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= -q / (static_cast<double>(k) * k);
    harmonic += 1.0 / k;
    const double d = -term * harmonic * k / half;
    sum += d;
    if (std::abs(d) < 1e-17 * (std::abs(sum) + 1.0) && k > 2) break;
  }
  return (2.0 / std::numbers::pi) *
         (bessel_j0_series(x) / x +
          (std::log(0.5 * x) + kEulerGamma) * bessel_j0_prime_series(x) + sum);
}

std::complex<double> hankel_h0_asymptotic(double x) {
  check_positive(x);
  // H0(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)} sum_k i^k a_k / x^k,
  // a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k), truncated before the smallest term.
  std::complex<double> sum = 0.0;
  std::complex<double> ik = 1.0;
  double a = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 80; ++k) {
    if (k > 0) {
      a *= -static_cast<double>((2 * k - 1) * (2 * k - 1)) / (8.0 * k * x);
      ik *= std::complex<double>(0.0, 1.0);
    }
    if (std::abs(a) >= prev) break;
    prev = std::abs(a);
    sum += ik * a;
  }
  const double phase = x - 0.25 * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) *
         std::complex<double>(std::cos(phase), std::sin(phase)) * sum;
}

double bessel_j0(double x) {
  if (std::abs(x) <= kBesselSeriesLimit) return bessel_j0_series(x);
  return hankel_h0_asymptotic(std::abs(x)).real();
}

double bessel_y0(double x) {
  check_positive(x);
  if (x <= kBesselSeriesLimit) return bessel_y0_series(x);
  return hankel_h0_asymptotic(x).imag();
}

std::complex<double> hankel_h0(double x) {
  check_positive(x);
  if (x <= kBesselSeriesLimit) return {bessel_j0_series(x), bessel_y0_series(x)};
  return hankel_h0_asymptotic(x);
}

// --- peak detection -------------------------------------------------------

std::vector<Detection> detect_peaks(const RealField& mu, double relative_threshold) {
  const GridSpec& g = mu.grid;
  const RealVector mag = mu.values.cwiseAbs();
  const double peak = mag.size() ? mag.maxCoeff() : 0.0;
  std::vector<Detection> candidates;
  if (!(peak > 0.0)) return candidates;
  const int n = g.n();
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Index idx = g.index(i, j);
      const double v = mag[idx];
      if (v <= relative_threshold * peak) continue;
      bool is_max = true;
      for (int dj = -1; dj <= 1 && is_max; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          const int jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= n || jj >= n) continue;
          if (mag[g.index(ii, jj)] > v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) {
        candidates.push_back({idx, g.coord(i), g.coord(j), mu.values[idx]});
      }
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Detection& a, const Detection& b) {
                     return std::abs(a.value) > std::abs(b.value);
                   });
  std::vector<Detection> kept;
  for (const auto& c : candidates) {
    bool adjacent = false;
    for (const auto& k : kept) {
      const Index ci = c.node % n, cj = c.node / n;
      const Index ki = k.node % n, kj = k.node / n;
      if (std::max(std::abs(ci - ki), std::abs(cj - kj)) <= 1) {
        adjacent = true;
        break;
      }
    }
    if (!adjacent) kept.push_back(c);
  }
  return kept;
}

PeakMatchReport peak_match(const RealField& mu, const std::vector<PeakSpec>& truth,
                           const PeakMatchOptions& options) {
  if (truth.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "peak matching needs at least one true peak");
  }
  PeakMatchReport report;
  report.match_radius = options.match_radius;
  if (!(report.match_radius > 0.0)) {
    double closest = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < truth.size(); ++a) {
      for (std::size_t b = a + 1; b < truth.size(); ++b) {
        closest = std::min(closest, std::hypot(truth[a].x - truth[b].x,
                                               truth[a].y - truth[b].y));
      }
    }
    report.match_radius = std::isfinite(closest) ? 0.5 * closest : 0.25;
  }
  report.detections = detect_peaks(mu, options.relative_threshold);
  for (const auto& t : truth) {
    PeakMatch m;
    m.truth = t;
    report.peaks.push_back(m);
  }

  struct Pair {
    double dist;
    std::size_t det;
    std::size_t peak;
  };
  std::vector<Pair> pairs;
  for (std::size_t d = 0; d < report.detections.size(); ++d) {
    for (std::size_t t = 0; t < truth.size(); ++t) {
      const double dist = std::hypot(report.detections[d].x - truth[t].x,
                                     report.detections[d].y - truth[t].y);
      if (dist <= report.match_radius) pairs.push_back({dist, d, t});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.dist < b.dist; });
  std::vector<bool> det_used(report.detections.size(), false);
  for (const auto& pr : pairs) {
    auto& m = report.peaks[pr.peak];
    if (m.matched || det_used[pr.det]) continue;
    det_used[pr.det] = true;
    m.matched = true;
    m.detection = report.detections[pr.det];
    m.distance = pr.dist;
    m.sign_ok = (m.detection.value > 0.0 ? 1 : -1) == m.truth.sign;
    ++report.matched;
    if (m.sign_ok) ++report.sign_hits;
    report.max_distance_cells =
        std::max(report.max_distance_cells, pr.dist / mu.grid.h());
  }
  for (bool used : det_used) {
    if (!used) ++report.spurious;
  }
  return report;
}

Index support_size(const RealVector& mu, double fraction) {
  if (mu.size() == 0) return 0;
  const double peak = mu.cwiseAbs().maxCoeff();
  if (!(peak > 0.0)) return 0;
  return (mu.array().abs() > fraction * peak).count();
}

}  // namespace sparsesrc::oracle
