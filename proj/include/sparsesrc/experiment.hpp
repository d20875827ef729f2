#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sparsesrc/helmholtz.hpp"
#include "sparsesrc/medium.hpp"
#include "sparsesrc/ssn.hpp"

namespace sparsesrc {

enum class Method { kSsn, kTikhonov, kBoth, kSsnRealPart };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);

inline constexpr std::string_view kCustomExample = "custom";

/// One reconstruction experiment. The text form is one `key = value` per
/// line with `#` comments; see docs/config.md for the key list.
struct ExperimentConfig {
  std::string example;  // builtin example name or "custom"
  std::vector<PeakSpec> peaks;  // custom only
  double amplitude = kDefaultAmplitude;
  double inverse_width = kDefaultInverseWidth;
  std::optional<double> k;
  std::optional<int> grid_n;
  std::optional<MediumMode> medium;
  std::optional<double> tikhonov_alpha;
  double noise = 0.01;
  std::uint64_t seed = 0;
  Method method = Method::kBoth;
  SsnConfig ssn;  // ssn.alpha is the regularisation weight
  double pml_strength = kDefaultPmlStrength;
  int pml_order = kDefaultPmlOrder;
  std::string output_dir = "sparsesrc-out";

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

/// Parses the key-value text. Errors are Error(kConfig) whose message starts
/// with "line <n>:" when a specific line is at fault.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);
std::string serialize_config(const ExperimentConfig& config);

/// Applies one key/value pair (the same keys as the text form).
void set_config_value(ExperimentConfig& config, std::string_view key,
                      std::string_view value);

/// Rejects configurations whose values fall outside operation preconditions.
void validate_config(const ExperimentConfig& config);

struct RunOutcome {
  std::string report_json;
  bool ok = false;
  std::string error;  // empty when ok
  std::vector<std::string> files;
};

/// Runs the whole pipeline and writes its artifacts into config.output_dir.
/// Configuration problems throw Error(kConfig) before anything is written;
/// solver failures are reported in the outcome (ok = false) with the
/// artifacts produced so far left in place.
RunOutcome run_experiment(const ExperimentConfig& config);

/// JSON description of the builtin examples.
std::string examples_json();

// Field dumps: "# n=<n> h=<h> order=row-major" then "x y value" or
// "x y re im" per node in index order.
void write_real_field(std::ostream& out, const GridSpec& grid, const RealVector& values);
void write_complex_field(std::ostream& out, const GridSpec& grid,
                         const ComplexVector& values);

}  // namespace sparsesrc
