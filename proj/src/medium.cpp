#include "sparsesrc/medium.hpp"

#include <cmath>
#include <random>

#include "sparsesrc/error.hpp"

namespace sparsesrc {

RealField::RealField(GridSpec g, RealVector v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::kSizeMismatch,
                "field has " + std::to_string(values.size()) +
                    " values for a grid of " + std::to_string(grid.size()));
  }
  if (!values.allFinite()) {
    throw Error(ErrorCode::kInvalidArgument, "field values must be finite");
  }
}

RealField::RealField(GridSpec g) : grid(g), values(RealVector::Zero(g.size())) {}

RealField gaussian_peak_source(const std::vector<PeakSpec>& peaks, double a,
                               double b, const GridSpec& grid) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "peak amplitude and inverse width must be positive");
  }
  for (const auto& p : peaks) {
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "peak centre must lie strictly inside the unit square");
    }
    if (p.sign != 1 && p.sign != -1) {
      throw Error(ErrorCode::kInvalidArgument, "peak sign must be +1 or -1");
    }
  }
  RealVector values = RealVector::Zero(grid.size());
  for (int j = 0; j < grid.n(); ++j) {
    const double y = grid.coord(j);
    for (int i = 0; i < grid.n(); ++i) {
      const double x = grid.coord(i);
      double sum = 0.0;
      for (const auto& p : peaks) {
        const double dx = x - p.x;
        const double dy = y - p.y;
        sum += p.sign * a * std::exp(-b * (dx * dx + dy * dy));
      }
      values[grid.index(i, j)] = sum;
    }
  }
  return RealField(grid, std::move(values));
}

namespace {

constexpr double kQ = 0.25;
constexpr double kH = 0.5;
constexpr double kT = 0.75;

}  // namespace

std::string_view example_name(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kPeaks4: return "peaks4";
    case BuiltinExample::kPeaks9: return "peaks9";
    case BuiltinExample::kPeaks7Inhomo: return "peaks7_inhomo";
  }
  return "";
}

const std::vector<BuiltinExample>& all_examples() {
  static const std::vector<BuiltinExample> all = {
      BuiltinExample::kPeaks4, BuiltinExample::kPeaks9,
      BuiltinExample::kPeaks7Inhomo};
  return all;
}

BuiltinExample parse_example_name(std::string_view name) {
  std::string valid;
  for (auto e : all_examples()) {
    if (example_name(e) == name) return e;
    if (!valid.empty()) valid += ", ";
    valid += example_name(e);
  }
  throw Error(ErrorCode::kConfig, "unknown example '" + std::string(name) +
                                      "' (valid: " + valid + ")");
}

std::vector<PeakSpec> example_peaks(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kPeaks4:
      return {{kQ, kQ, -1}, {kT, kQ, -1}, {kH, kQ, -1}, {kH, kT, +1}};
    case BuiltinExample::kPeaks9:
      return {{kQ, kQ, -1}, {kT, kT, -1}, {kH, kT, -1},
              {kT, kH, +1}, {kQ, kH, +1}, {kQ, kT, +1},
              {kT, kQ, -1}, {kH, kQ, -1}, {kH, kH, +1}};
    case BuiltinExample::kPeaks7Inhomo:
      return {{kQ, kQ, -1}, {kT, kT, -1}, {kQ, kH, +1}, {kH, kT, -1},
              {kT, kQ, -1}, {kQ, kT, +1}, {kH, kH, +1}};
  }
  return {};
}

double example_wavenumber(BuiltinExample example) {
  switch (example) {
    case BuiltinExample::kPeaks4: return 6.0;
    case BuiltinExample::kPeaks9: return 24.0;
    case BuiltinExample::kPeaks7Inhomo: return 12.0;
  }
  return 0.0;
}

MediumMode example_medium(BuiltinExample example) {
  return example == BuiltinExample::kPeaks7Inhomo ? MediumMode::kInhomogeneous
                                                  : MediumMode::kHomogeneous;
}

ExampleSetup builtin_example(BuiltinExample example, const GridSpec& grid) {
  auto peaks = example_peaks(example);
  auto source = gaussian_peak_source(peaks, kDefaultAmplitude,
                                     kDefaultInverseWidth, grid);
  const auto medium = example_medium(example);
  return ExampleSetup{std::move(peaks), std::move(source),
                      refraction_index(grid, medium), medium,
                      example_wavenumber(example), 0.01};
}

std::string_view medium_name(MediumMode mode) {
  return mode == MediumMode::kHomogeneous ? "homogeneous" : "inhomogeneous";
}

MediumMode parse_medium_name(std::string_view name) {
  if (name == "homogeneous") return MediumMode::kHomogeneous;
  if (name == "inhomogeneous") return MediumMode::kInhomogeneous;
  throw Error(ErrorCode::kConfig,
              "unknown medium '" + std::string(name) +
                  "' (valid: homogeneous, inhomogeneous)");
}

RealField refraction_index(const GridSpec& grid, MediumMode mode) {
  RealVector values = RealVector::Ones(grid.size());
  if (mode == MediumMode::kInhomogeneous) {
    for (Index idx = 0; idx < grid.size(); ++idx) {
      const auto [x, y] = grid.node_coords(idx);
      const double c = 1.0 + 10.0 * (x > 0.3 ? 1.0 : 0.0) +
                       20.0 * (y < 0.3 ? 1.0 : 0.0);
      values[idx] = 1.0 / (c * c);
    }
  }
  return RealField(grid, std::move(values));
}

ComplexVector add_noise(const ComplexVector& u, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "noise level must be non-negative");
  }
  if (eps == 0.0) return u;
  const double norm_u = u.norm();
  if (norm_u == 0.0) {
    warn("add_noise: data field is identically zero, returning it unchanged");
    return u;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector g(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    g[i] = {re, im};
  }
  return u + (eps * norm_u / g.norm()) * g;
}

}  // namespace sparsesrc
