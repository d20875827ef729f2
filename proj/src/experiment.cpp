#include "sparsesrc/experiment.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "sparsesrc/error.hpp"
#include "sparsesrc/oracle.hpp"
#include "sparsesrc/realblock.hpp"
#include "sparsesrc/tikhonov.hpp"

namespace sparsesrc {

using nlohmann::json;

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kSsn: return "ssn";
    case Method::kTikhonov: return "tikhonov";
    case Method::kBoth: return "both";
    case Method::kSsnRealPart: return "ssn_real_part";
  }
  return "";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::kSsn, Method::kTikhonov, Method::kBoth, Method::kSsnRealPart}) {
    if (method_name(m) == name) return m;
  }
  throw Error(ErrorCode::kConfig, "unknown method '" + std::string(name) +
                                      "' (valid: ssn, tikhonov, both, ssn_real_part)");
}

// --- config text ------------------------------------------------------------

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE ||
      !std::isfinite(v)) {
    throw Error(ErrorCode::kConfig, "key '" + std::string(key) + "' expects a number, got '" +
                                        text + "'");
  }
  return v;
}

long long to_integer(std::string_view key, std::string_view value) {
  const std::string text(value);
  char* end = nullptr;
  errno = 0;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE) {
    throw Error(ErrorCode::kConfig, "key '" + std::string(key) +
                                        "' expects an integer, got '" + text + "'");
  }
  return v;
}

int to_int(std::string_view key, std::string_view value) {
  const long long v = to_integer(key, value);
  if (v < -1'000'000'000LL || v > 1'000'000'000LL) {
    throw Error(ErrorCode::kConfig, "key '" + std::string(key) + "' is out of range");
  }
  return static_cast<int>(v);
}

std::vector<PeakSpec> to_peaks(std::string_view value) {
  std::vector<PeakSpec> peaks;
  std::string_view rest = value;
  while (!rest.empty()) {
    const auto semi = rest.find(';');
    const std::string_view item = trim(rest.substr(0, semi));
    rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
    if (item.empty()) continue;
    std::vector<std::string_view> parts;
    std::string_view tail = item;
    while (true) {
      const auto comma = tail.find(',');
      parts.push_back(trim(tail.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      tail = tail.substr(comma + 1);
    }
    if (parts.size() != 3) {
      throw Error(ErrorCode::kConfig,
                  "key 'peaks' expects 'x,y,sign' entries separated by ';', got '" +
                      std::string(item) + "'");
    }
    PeakSpec p;
    p.x = to_double("peaks", parts[0]);
    p.y = to_double("peaks", parts[1]);
    const long long s = to_integer("peaks", parts[2]);
    if (s != 1 && s != -1) {
      throw Error(ErrorCode::kConfig, "peak sign must be 1 or -1");
    }
    p.sign = static_cast<int>(s);
    peaks.push_back(p);
  }
  return peaks;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "example", "peaks", "amplitude", "inverse_width", "k", "grid_n", "medium",
      "alpha", "tikhonov_alpha", "noise", "seed", "method", "gamma0", "gamma_factor",
      "outer_steps", "inner_cap", "lin_tol", "lin_mode", "pml_strength", "pml_order",
      "output_dir"};
  return keys;
}

}  // namespace

void set_config_value(ExperimentConfig& c, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "example") {
    if (value != kCustomExample) parse_example_name(value);
    c.example = std::string(value);
  } else if (key == "peaks") {
    c.peaks = to_peaks(value);
  } else if (key == "amplitude") {
    c.amplitude = to_double(key, value);
  } else if (key == "inverse_width") {
    c.inverse_width = to_double(key, value);
  } else if (key == "k") {
    c.k = to_double(key, value);
  } else if (key == "grid_n") {
    c.grid_n = to_int(key, value);
  } else if (key == "medium") {
    c.medium = parse_medium_name(value);
  } else if (key == "alpha") {
    c.ssn.alpha = to_double(key, value);
  } else if (key == "tikhonov_alpha") {
    c.tikhonov_alpha = to_double(key, value);
  } else if (key == "noise") {
    c.noise = to_double(key, value);
  } else if (key == "seed") {
    const long long s = to_integer(key, value);
    if (s < 0) throw Error(ErrorCode::kConfig, "key 'seed' must be non-negative");
    c.seed = static_cast<std::uint64_t>(s);
  } else if (key == "method") {
    c.method = parse_method(value);
  } else if (key == "gamma0") {
    c.ssn.gamma0 = to_double(key, value);
  } else if (key == "gamma_factor") {
    c.ssn.gamma_factor = to_double(key, value);
  } else if (key == "outer_steps") {
    c.ssn.outer_steps = to_int(key, value);
  } else if (key == "inner_cap") {
    c.ssn.inner_cap = to_int(key, value);
  } else if (key == "lin_tol") {
    c.ssn.lin_tol = to_double(key, value);
  } else if (key == "lin_mode") {
    c.ssn.lin_mode = parse_linear_mode(value);
  } else if (key == "pml_strength") {
    c.pml_strength = to_double(key, value);
  } else if (key == "pml_order") {
    c.pml_order = to_int(key, value);
  } else if (key == "output_dir") {
    if (value.empty()) throw Error(ErrorCode::kConfig, "key 'output_dir' must not be empty");
    c.output_dir = std::string(value);
  } else {
    std::string valid;
    for (const auto& k : known_keys()) valid += (valid.empty() ? "" : ", ") + k;
    throw Error(ErrorCode::kConfig,
                "unknown key '" + std::string(key) + "' (valid: " + valid + ")");
  }
}

void validate_config(const ExperimentConfig& c) {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kConfig, msg); };
  if (c.example.empty()) fail("missing required key 'example'");
  const bool custom = c.example == kCustomExample;
  if (custom) {
    if (c.peaks.empty()) fail("example 'custom' requires key 'peaks'");
    if (!c.k) fail("example 'custom' requires key 'k'");
  } else if (!c.peaks.empty()) {
    fail("key 'peaks' is only allowed with example = custom");
  }
  for (const auto& p : c.peaks) {
    if (!(p.x > 0.0 && p.x < 1.0 && p.y > 0.0 && p.y < 1.0)) {
      fail("peak centres must lie strictly inside (0,1)^2");
    }
  }
  if (!(c.amplitude > 0.0)) fail("key 'amplitude' must be positive");
  if (!(c.inverse_width > 0.0)) fail("key 'inverse_width' must be positive");
  if (c.k && !(*c.k > 2.0)) fail("key 'k' must exceed 2");
  if (c.grid_n && *c.grid_n < GridSpec::kMinNodes) fail("key 'grid_n' must be at least 8");
  if (c.tikhonov_alpha && !(*c.tikhonov_alpha >= 0.0)) {
    fail("key 'tikhonov_alpha' must be non-negative");
  }
  if (!(c.noise >= 0.0)) fail("key 'noise' must be non-negative");
  if (!(c.pml_strength > 0.0)) fail("key 'pml_strength' must be positive");
  if (c.pml_order != 2 && c.pml_order != 3) fail("key 'pml_order' must be 2 or 3");
  try {
    c.ssn.validate();
  } catch (const Error& e) {
    fail(e.what());
  }
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::map<std::string, int> seen;
  int line_no = 0;
  std::string_view rest = text;
  while (!rest.empty() || line_no == 0) {
    ++line_no;
    const auto nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view{} : rest.substr(nl + 1);
    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (rest.empty()) break;
      continue;
    }
    const auto eq = line.find('=');
    const std::string prefix = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kConfig, prefix + "expected 'key = value', got '" +
                                          std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (auto it = seen.find(key); it != seen.end()) {
      throw Error(ErrorCode::kConfig, prefix + "duplicate key '" + key +
                                          "' (first set on line " +
                                          std::to_string(it->second) + ")");
    }
    seen[key] = line_no;
    try {
      set_config_value(c, key, line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, prefix + e.what());
    }
    if (rest.empty()) break;
  }
  validate_config(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kConfig, "cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_config(buf.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

std::string serialize_config(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "example = " << c.example << '\n';
  if (!c.peaks.empty()) {
    out << "peaks = ";
    for (std::size_t i = 0; i < c.peaks.size(); ++i) {
      if (i) out << "; ";
      out << format_double(c.peaks[i].x) << ',' << format_double(c.peaks[i].y) << ','
          << c.peaks[i].sign;
    }
    out << '\n';
  }
  out << "amplitude = " << format_double(c.amplitude) << '\n';
  out << "inverse_width = " << format_double(c.inverse_width) << '\n';
  if (c.k) out << "k = " << format_double(*c.k) << '\n';
  if (c.grid_n) out << "grid_n = " << *c.grid_n << '\n';
  if (c.medium) out << "medium = " << medium_name(*c.medium) << '\n';
  out << "alpha = " << format_double(c.ssn.alpha) << '\n';
  if (c.tikhonov_alpha) out << "tikhonov_alpha = " << format_double(*c.tikhonov_alpha) << '\n';
  out << "noise = " << format_double(c.noise) << '\n';
  out << "seed = " << c.seed << '\n';
  out << "method = " << method_name(c.method) << '\n';
  out << "gamma0 = " << format_double(c.ssn.gamma0) << '\n';
  out << "gamma_factor = " << format_double(c.ssn.gamma_factor) << '\n';
  out << "outer_steps = " << c.ssn.outer_steps << '\n';
  out << "inner_cap = " << c.ssn.inner_cap << '\n';
  out << "lin_tol = " << format_double(c.ssn.lin_tol) << '\n';
  out << "lin_mode = " << linear_mode_name(c.ssn.lin_mode) << '\n';
  out << "pml_strength = " << format_double(c.pml_strength) << '\n';
  out << "pml_order = " << c.pml_order << '\n';
  out << "output_dir = " << c.output_dir << '\n';
  return out.str();
}

// --- field dumps ------------------------------------------------------------

void write_real_field(std::ostream& out, const GridSpec& grid, const RealVector& values) {
  out << "# n=" << grid.n() << " h=" << format_double(grid.h())
      << " order=row-major columns=x,y,value\n";
  char line[128];
  for (Index idx = 0; idx < grid.size(); ++idx) {
    const auto [x, y] = grid.node_coords(idx);
    std::snprintf(line, sizeof line, "%.17g %.17g %.17g\n", x, y, values[idx]);
    out << line;
  }
}

void write_complex_field(std::ostream& out, const GridSpec& grid,
                         const ComplexVector& values) {
  out << "# n=" << grid.n() << " h=" << format_double(grid.h())
      << " order=row-major columns=x,y,re,im\n";
  char line[160];
  for (Index idx = 0; idx < grid.size(); ++idx) {
    const auto [x, y] = grid.node_coords(idx);
    std::snprintf(line, sizeof line, "%.17g %.17g %.17g %.17g\n", x, y,
                  values[idx].real(), values[idx].imag());
    out << line;
  }
}

// --- run ----------------------------------------------------------------------

namespace {

json peaks_json(const std::vector<PeakSpec>& peaks) {
  json arr = json::array();
  for (const auto& p : peaks) arr.push_back({{"x", p.x}, {"y", p.y}, {"sign", p.sign}});
  return arr;
}

json match_json(const oracle::PeakMatchReport& r) {
  json peaks = json::array();
  for (const auto& m : r.peaks) {
    json e = {{"truth", {{"x", m.truth.x}, {"y", m.truth.y}, {"sign", m.truth.sign}}},
              {"matched", m.matched}};
    if (m.matched) {
      e["detected"] = {{"x", m.detection.x}, {"y", m.detection.y}, {"value", m.detection.value}};
      e["distance"] = m.distance;
      e["sign_ok"] = m.sign_ok;
    }
    peaks.push_back(e);
  }
  json spurious = json::array();
  for (const auto& d : r.detections) {
    bool used = false;
    for (const auto& m : r.peaks) used = used || (m.matched && m.detection.node == d.node);
    if (!used) spurious.push_back({{"x", d.x}, {"y", d.y}, {"value", d.value}});
  }
  return {{"matched", r.matched},
          {"sign_hits", r.sign_hits},
          {"spurious", r.spurious},
          {"match_radius", r.match_radius},
          {"max_distance_cells", r.max_distance_cells},
          {"peaks", peaks},
          {"spurious_detections", spurious}};
}

json trace_json(const SsnTrace& trace) {
  json arr = json::array();
  for (const auto& s : trace.steps) {
    arr.push_back({{"gamma", s.gamma},
                   {"inner_iters", s.inner_iters},
                   {"converged", s.converged},
                   {"residual_inf", s.residual_inf},
                   {"active_plus", s.active_plus},
                   {"active_minus", s.active_minus},
                   {"linear_residual", s.linear_residual}});
  }
  return arr;
}

json trace_file(const GridSpec& grid, const SsnTrace& trace) {
  return {{"grid", {{"n", grid.n()}, {"h", grid.h()}, {"order", "row-major"}}},
          {"steps", trace_json(trace)}};
}

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, std::vector<std::string>& files)
      : dir_(std::move(dir)), files_(files) {}

  template <class Fn>
  void write(const std::string& name, Fn&& fn) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    fn(out);
    if (!out) throw Error(ErrorCode::kIo, "failed writing '" + path.string() + "'");
    files_.push_back(name);
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::string>& files_;
};

struct Resolved {
  std::vector<PeakSpec> peaks;
  double k;
  MediumMode medium;
  GridSpec grid;
};

Resolved resolve(const ExperimentConfig& c) {
  const bool custom = c.example == kCustomExample;
  std::vector<PeakSpec> peaks;
  double k = 0.0;
  MediumMode medium = MediumMode::kHomogeneous;
  if (custom) {
    peaks = c.peaks;
  } else {
    const auto ex = parse_example_name(c.example);
    peaks = example_peaks(ex);
    k = example_wavenumber(ex);
    medium = example_medium(ex);
  }
  if (c.k) k = *c.k;
  if (c.medium) medium = *c.medium;
  GridSpec grid = c.grid_n ? GridSpec(*c.grid_n) : grid_for_wavenumber(k);
  return {std::move(peaks), k, medium, grid};
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config) {
  validate_config(config);
  Resolved setup = [&] {
    try {
      return resolve(config);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfig, e.what());
    }
  }();
  if (config.method == Method::kSsnRealPart && setup.grid.size() > kDenseModeMaxUnknowns) {
    throw Error(ErrorCode::kConfig, "method ssn_real_part needs N <= " +
                                        std::to_string(kDenseModeMaxUnknowns) +
                                        " (set grid_n <= 64)");
  }
  if (config.method == Method::kSsnRealPart && setup.medium != MediumMode::kHomogeneous) {
    throw Error(ErrorCode::kConfig, "method ssn_real_part requires a homogeneous medium");
  }

  const std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create output directory '" + dir.string() +
                                    "': " + ec.message());
  }

  RunOutcome outcome;
  ArtifactWriter writer(dir, outcome.files);
  std::vector<std::string> warnings;
  ScopedWarningCapture capture(warnings);
  const GridSpec& grid = setup.grid;

  json report;
  report["schema"] = "sparsesrc-report/1";
  report["config"] = json::object();
  {
    std::istringstream lines(serialize_config(config));
    std::string line;
    while (std::getline(lines, line)) {
      const auto eq = line.find(" = ");
      report["config"][line.substr(0, eq)] = line.substr(eq + 3);
    }
  }
  report["grid"] = {{"n", grid.n()}, {"h", grid.h()}, {"N", grid.size()},
                    {"order", "row-major"}};
  report["wavenumber"] = setup.k;
  report["medium"] = std::string(medium_name(setup.medium));
  report["truth_peaks"] = peaks_json(setup.peaks);

  auto finish = [&](bool ok, const std::string& error) {
    report["status"] = ok ? "ok" : "solver_failure";
    if (!error.empty()) report["error"] = error;
    report["warnings"] = warnings;
    std::vector<std::string> files = outcome.files;
    files.push_back("report.json");
    report["files"] = files;
    outcome.report_json = report.dump(2) + "\n";
    writer.write("report.json", [&](std::ostream& out) { out << outcome.report_json; });
    outcome.ok = ok;
    outcome.error = error;
    return outcome;
  };

  try {
    const RealField source =
        gaussian_peak_source(setup.peaks, config.amplitude, config.inverse_width, grid);
    const RealField n_field = refraction_index(grid, setup.medium);
    const PmlProfile profile = pml_profile(
        grid, setup.k, config.pml_strength / pml_width(setup.k), config.pml_order);
    const HelmholtzOperator op = HelmholtzOperator::assemble(grid, profile, n_field, setup.k);
    report["pml"] = {{"sigma0", profile.sigma0}, {"width", profile.width},
                     {"order", profile.order}};

    writer.write("truth.txt", [&](std::ostream& o) { write_real_field(o, grid, source.values); });
    const ComplexVector clean = forward_solve(op, source);
    const ComplexVector measured = add_noise(clean, config.noise, config.seed);
    writer.write("measured.txt",
                 [&](std::ostream& o) { write_complex_field(o, grid, measured); });
    report["data"] = {{"noise", config.noise},
                      {"seed", config.seed},
                      {"clean_norm", clean.norm()},
                      {"perturbation_norm", (measured - clean).norm()}};

    const RealBlockVec data = to_block(grid, measured);
    const double alpha = config.ssn.alpha;
    const bool uses_ssn = config.method != Method::kTikhonov;
    if (uses_ssn) {
      double bound = 0.0;
      if (config.method == Method::kSsnRealPart) {
        // The real-part bound is computed with the real-part operator below.
        bound = std::numeric_limits<double>::quiet_NaN();
      } else {
        bound = alpha_bound(op, data);
        report["alpha"] = {{"value", alpha}, {"bound", bound}, {"admissible", alpha < bound}};
        if (!(alpha < bound)) {
          warn("alpha = " + format_double(alpha) + " is not below the bound |V^* U|_inf = " +
               format_double(bound) + "; the sparse reconstruction will be zero");
        }
      }
    }

    Index ssn_support = -1;
    Index tik_support = -1;
    bool ok = true;
    std::string error;

    if (config.method == Method::kSsn || config.method == Method::kBoth) {
      const SsnResult r = ssn_continuation(op, data, config.ssn);
      const RealField mu_field(grid, r.zeta.re());
      ssn_support = oracle::support_size(mu_field.values, 0.05);
      writer.write("ssn_mu.txt", [&](std::ostream& o) { write_complex_field(o, grid, r.mu); });
      writer.write("ssn_trace.json",
                   [&](std::ostream& o) { o << trace_file(grid, r.trace).dump(2) << '\n'; });
      report["ssn"] = {{"trace", trace_json(r.trace)},
                       {"total_inner_iters", r.trace.total_inner_iters()},
                       {"all_converged", r.trace.all_converged()},
                       {"final_residual_inf", r.final_residual_inf},
                       {"residual_limit", r.residual_limit},
                       {"residual_ok", r.residual_ok},
                       {"zeta_real_inf", r.zeta.re().lpNorm<Eigen::Infinity>()},
                       {"zeta_imag_norm", r.zeta.im().norm()},
                       {"support_5pct", ssn_support},
                       {"peaks", match_json(oracle::peak_match(mu_field, setup.peaks))}};
      if (!r.residual_ok) {
        ok = false;
        error = "SSN final residual " + format_double(r.final_residual_inf) +
                " exceeds the limit " + format_double(r.residual_limit);
      }
    }

    if (config.method == Method::kTikhonov || config.method == Method::kBoth) {
      const double t_alpha = config.tikhonov_alpha.value_or(alpha);
      const TikhonovResult t = tikhonov_solve(op, measured, t_alpha);
      const RealField mu_field(grid, t.mu.real());
      tik_support = oracle::support_size(mu_field.values, 0.05);
      writer.write("tikhonov_mu.txt",
                   [&](std::ostream& o) { write_complex_field(o, grid, t.mu); });
      report["tikhonov"] = {{"alpha", t_alpha},
                            {"iterations", t.iterations},
                            {"relative_residual", t.relative_residual},
                            {"support_5pct", tik_support},
                            {"peaks", match_json(oracle::peak_match(mu_field, setup.peaks))}};
    }

    if (config.method == Method::kBoth) {
      report["comparison"] = {
          {"ssn_support_5pct", ssn_support},
          {"tikhonov_support_5pct", tik_support},
          {"support_ratio", ssn_support > 0 ? static_cast<double>(tik_support) / ssn_support
                                            : std::numeric_limits<double>::infinity()}};
      if (ssn_support == 0) report["comparison"]["support_ratio"] = nullptr;
    }

    if (config.method == Method::kSsnRealPart) {
      const RealPartOperator l1 = real_part_operator(op);
      const RealPartModel model(l1.matrix);
      const RealVector data_re = measured.real();
      const double bound = alpha_bound(model, data_re);
      report["alpha"] = {{"value", alpha}, {"bound", bound}, {"admissible", alpha < bound}};
      if (!(alpha < bound)) {
        warn("alpha = " + format_double(alpha) + " is not below the bound |V_R^T u_R|_inf = " +
             format_double(bound) + "; the sparse reconstruction will be zero");
      }
      SsnConfig cfg = config.ssn;
      cfg.lin_mode = LinearMode::kDense;
      const SsnRun r = ssn_continuation(model, data_re, cfg);
      const RealField mu_field(grid, r.zeta);
      writer.write("ssn_real_part_mu.txt",
                   [&](std::ostream& o) { write_real_field(o, grid, r.zeta); });
      writer.write("ssn_trace.json",
                   [&](std::ostream& o) { o << trace_file(grid, r.trace).dump(2) << '\n'; });
      report["ssn_real_part"] = {
          {"real_part_operator",
           {{"condition", l1.condition},
            {"smallest_singular_value", l1.smallest_singular_value},
            {"invertible", l1.invertible}}},
          {"trace", trace_json(r.trace)},
          {"total_inner_iters", r.trace.total_inner_iters()},
          {"all_converged", r.trace.all_converged()},
          {"final_residual_inf", r.final_residual_inf},
          {"residual_limit", r.residual_limit},
          {"residual_ok", r.residual_ok},
          {"support_5pct", oracle::support_size(r.zeta, 0.05)},
          {"peaks", match_json(oracle::peak_match(mu_field, setup.peaks))}};
      if (!r.residual_ok) {
        ok = false;
        error = "real-part SSN final residual " + format_double(r.final_residual_inf) +
                " exceeds the limit " + format_double(r.residual_limit);
      }
    }
    return finish(ok, error);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kIo) throw;
    return finish(false, std::string(to_string(e.code())) + ": " + e.what());
  }
}

std::string examples_json() {
  json arr = json::array();
  for (auto ex : all_examples()) {
    arr.push_back({{"name", std::string(example_name(ex))},
                   {"k", example_wavenumber(ex)},
                   {"grid_n", grid_for_wavenumber(example_wavenumber(ex)).n()},
                   {"medium", std::string(medium_name(example_medium(ex)))},
                   {"amplitude", kDefaultAmplitude},
                   {"inverse_width", kDefaultInverseWidth},
                   {"noise", 0.01},
                   {"alpha", SsnConfig{}.alpha},
                   {"peaks", peaks_json(example_peaks(ex))}});
  }
  return arr.dump(2) + "\n";
}

}  // namespace sparsesrc
