#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "sparsesrc/grid.hpp"

namespace sparsesrc {

using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

struct PeakSpec {
  double x = 0.5;
  double y = 0.5;
  int sign = 1;  // +1 or -1

  friend bool operator==(const PeakSpec&, const PeakSpec&) = default;
};

/// Real scalar sampled at the interior nodes of a grid (sources, refraction
/// index, reconstructions).
struct RealField {
  RealField(GridSpec grid, RealVector values);
  explicit RealField(GridSpec grid);

  GridSpec grid;
  RealVector values;
};

enum class MediumMode { kHomogeneous, kInhomogeneous };

enum class BuiltinExample { kPeaks4, kPeaks9, kPeaks7Inhomo };

struct ExampleSetup {
  std::vector<PeakSpec> peaks;
  RealField source;
  RealField n_field;
  MediumMode medium;
  double k;
  double noise;
};

inline constexpr double kDefaultAmplitude = 1000.0;
inline constexpr double kDefaultInverseWidth = 3000.0;

/// Sum over peaks of sign * a * exp(-b |x - c|^2), sampled pointwise.
RealField gaussian_peak_source(const std::vector<PeakSpec>& peaks, double a,
                               double b, const GridSpec& grid);

std::string_view example_name(BuiltinExample example);
BuiltinExample parse_example_name(std::string_view name);
const std::vector<BuiltinExample>& all_examples();

std::vector<PeakSpec> example_peaks(BuiltinExample example);
double example_wavenumber(BuiltinExample example);
MediumMode example_medium(BuiltinExample example);

ExampleSetup builtin_example(BuiltinExample example, const GridSpec& grid);

std::string_view medium_name(MediumMode mode);
MediumMode parse_medium_name(std::string_view name);

/// Wave speed c = 1 + 10*[x > 0.3] + 20*[y < 0.3] with n = 1/c^2 in the
/// inhomogeneous mode; n = 1 otherwise.
RealField refraction_index(const GridSpec& grid, MediumMode mode);

/// u + eps * (|u|_2 / |g|_2) * g with g complex standard normal drawn from a
/// generator seeded by `seed`, so that |result - u|_2 = eps |u|_2.
ComplexVector add_noise(const ComplexVector& u, double eps, std::uint64_t seed);

}  // namespace sparsesrc
