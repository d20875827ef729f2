#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sparsesrc/error.hpp"
#include "sparsesrc/experiment.hpp"

using namespace sparsesrc;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sparsesrc_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfig);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

}  // namespace

TEST_CASE("minimal config takes every default") {
  const ExperimentConfig c = parse_config("example = peaks4\n");
  ExperimentConfig want;
  want.example = "peaks4";
  CHECK(c == want);
  CHECK(c.ssn.alpha == 1e-5);
  CHECK(c.noise == 0.01);
  CHECK(c.method == Method::kBoth);
  CHECK(c.ssn.gamma0 == 1e5);
  CHECK(!c.k);
}

TEST_CASE("full config round trip") {
  const std::string text = R"(# a full configuration
example = custom
peaks = 0.25,0.25,-1; 0.7,0.6,1
amplitude = 500
inverse_width = 2000.5
k = 7.5
grid_n = 30
medium = inhomogeneous
alpha = 2.5e-6
tikhonov_alpha = 1e-4
noise = 0.02
seed = 12345
method = ssn
gamma0 = 1e4
gamma_factor = 100
outer_steps = 4
inner_cap = 25
lin_tol = 1e-12
lin_mode = iterative_normal
pml_strength = 30
pml_order = 3
output_dir = /tmp/some where
)";
  const ExperimentConfig c = parse_config(text);
  CHECK(c.peaks.size() == 2);
  CHECK(c.peaks[1] == PeakSpec{0.7, 0.6, 1});
  CHECK(*c.k == 7.5);
  CHECK(*c.grid_n == 30);
  CHECK(*c.medium == MediumMode::kInhomogeneous);
  CHECK(c.ssn.lin_mode == LinearMode::kIterativeNormal);
  CHECK(c.output_dir == "/tmp/some where");
  CHECK(c.seed == 12345u);
  const std::string out = serialize_config(c);
  CHECK(parse_config(out) == c);
  CHECK(serialize_config(parse_config(out)) == out);

  ExperimentConfig odd;
  odd.example = "peaks9";
  odd.ssn.alpha = 0.1 + 0.2;  // not exactly representable in short decimal
  odd.noise = 1.0 / 3.0;
  CHECK(parse_config(serialize_config(odd)) == odd);
}

TEST_CASE("config errors carry line numbers") {
  const std::string unknown = config_error("example = peaks5\n");
  CHECK(unknown.find("line 1") != std::string::npos);
  CHECK(unknown.find("unknown example") != std::string::npos);
  CHECK(unknown.find("peaks4") != std::string::npos);

  CHECK(config_error("example = peaks4\nbogus = 1\n").find("line 2: unknown key 'bogus'") !=
        std::string::npos);
  CHECK(config_error("example = peaks4\n\nalpha = abc\n").find("line 3") != std::string::npos);
  CHECK(config_error("example = peaks4\nseed = 1.5\n").find("line 2") != std::string::npos);
  CHECK(config_error("example = peaks4\nalpha = 1\nalpha = 2\n").find("duplicate") !=
        std::string::npos);
  CHECK(config_error("example peaks4\n").find("line 1") != std::string::npos);
  CHECK(config_error("alpha = 1e-5\n").find("missing required key 'example'") !=
        std::string::npos);
  CHECK(config_error("example = custom\nk = 6\n").find("peaks") != std::string::npos);
  CHECK(config_error("example = custom\npeaks = 0.5,0.5,1\n").find("'k'") != std::string::npos);
  CHECK(config_error("example = custom\nk = 6\npeaks = 0.5,0.5,2\n").find("sign") !=
        std::string::npos);
  CHECK(config_error("example = custom\nk = 6\npeaks = 1.5,0.5,1\n").find("inside") !=
        std::string::npos);
  CHECK(config_error("example = peaks4\nmethod = lasso\n").find("method") != std::string::npos);
  CHECK(config_error("example = peaks4\nalpha = -1\n").find("alpha") != std::string::npos);
  CHECK(config_error("example = peaks4\ngrid_n = 4\n").find("grid_n") != std::string::npos);
  CHECK(config_error("example = peaks4\nnoise = -0.1\n").find("noise") != std::string::npos);
  CHECK(config_error("example = peaks4\nlin_mode = magic\n").find("line 2") !=
        std::string::npos);
}

TEST_CASE("method names") {
  for (auto m : {Method::kSsn, Method::kTikhonov, Method::kBoth, Method::kSsnRealPart}) {
    CHECK(parse_method(method_name(m)) == m);
  }
}

TEST_CASE("peaks4 run with method both") {
  ExperimentConfig c = parse_config("example = peaks4\n");
  c.output_dir = fresh_dir("both").string();
  const RunOutcome out = run_experiment(c);
  CHECK(out.ok);
  for (const char* f : {"truth.txt", "measured.txt", "ssn_mu.txt", "tikhonov_mu.txt",
                        "ssn_trace.json", "report.json"}) {
    CHECK(fs::exists(fs::path(c.output_dir) / f));
  }
  const json r = json::parse(out.report_json);
  CHECK(r["schema"] == "sparsesrc-report/1");
  CHECK(r["status"] == "ok");
  CHECK(r["grid"]["n"] == 24);
  CHECK(r["ssn"]["peaks"]["matched"] == 4);
  CHECK(r["ssn"]["peaks"]["sign_hits"] == 4);
  CHECK(r["ssn"]["trace"].size() == 6);
  CHECK(r.contains("comparison"));
  CHECK(r["comparison"]["tikhonov_support_5pct"].get<int>() >=
        3 * r["comparison"]["ssn_support_5pct"].get<int>());
  std::vector<int> signs;
  for (const auto& p : r["ssn"]["peaks"]["peaks"]) {
    signs.push_back(p["detected"]["value"].get<double>() > 0 ? 1 : -1);
  }
  CHECK(signs == std::vector<int>{-1, -1, -1, 1});
  CHECK(slurp(fs::path(c.output_dir) / "report.json") == out.report_json);

  // Every field file starts with the grid metadata.
  for (const char* f : {"truth.txt", "measured.txt", "ssn_mu.txt", "tikhonov_mu.txt"}) {
    std::ifstream in(fs::path(c.output_dir) / f);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("# n=24 h=", 0) == 0);
    CHECK(header.find("order=row-major") != std::string::npos);
    int lines = 0;
    for (std::string l; std::getline(in, l);) ++lines;
    CHECK(lines == 576);
  }
  const json trace = json::parse(slurp(fs::path(c.output_dir) / "ssn_trace.json"));
  CHECK(trace["grid"]["n"] == 24);
  CHECK(trace["steps"].size() == 6);
}

TEST_CASE("identical configs give byte-identical artifacts") {
  ExperimentConfig c = parse_config("example = peaks4\nseed = 7\n");
  c.output_dir = fresh_dir("repeat_a").string();
  const RunOutcome a = run_experiment(c);
  c.output_dir = fresh_dir("repeat_b").string();
  const RunOutcome b = run_experiment(c);
  REQUIRE(a.files == b.files);
  for (const auto& f : a.files) {
    if (f == "report.json") continue;  // embeds output_dir
    CHECK(slurp(fs::temp_directory_path() / "sparsesrc_test_repeat_a" / f) ==
          slurp(fs::temp_directory_path() / "sparsesrc_test_repeat_b" / f));
  }
  json ra = json::parse(a.report_json);
  json rb = json::parse(b.report_json);
  ra["config"].erase("output_dir");
  rb["config"].erase("output_dir");
  CHECK(ra.dump() == rb.dump());

  c.output_dir = fresh_dir("repeat_a").string();
  CHECK(run_experiment(c).report_json == a.report_json);
}

TEST_CASE("alpha above the bound gives a zero reconstruction and a warning") {
  ExperimentConfig c = parse_config("example = peaks4\nmethod = ssn\n");
  c.output_dir = fresh_dir("bound").string();
  const json first = json::parse(run_experiment(c).report_json);
  const double bound = first["alpha"]["bound"];
  c.ssn.alpha = 2.0 * bound;
  const RunOutcome out = run_experiment(c);
  const json r = json::parse(out.report_json);
  CHECK(r["alpha"]["admissible"] == false);
  CHECK(r["warnings"].size() == 1);
  CHECK(r["ssn"]["zeta_real_inf"].get<double>() <= 1e-8);
  CHECK(r["ssn"]["peaks"]["matched"] == 0);
}

TEST_CASE("solver failure keeps partial artifacts") {
  ExperimentConfig c = parse_config("example = peaks4\nmethod = ssn\ninner_cap = 1\n");
  c.output_dir = fresh_dir("failure").string();
  const RunOutcome out = run_experiment(c);
  CHECK(!out.ok);
  CHECK(!out.error.empty());
  const json r = json::parse(out.report_json);
  CHECK(r["status"] == "solver_failure");
  CHECK(fs::exists(fs::path(c.output_dir) / "ssn_mu.txt"));
  CHECK(fs::exists(fs::path(c.output_dir) / "report.json"));
}

TEST_CASE("real-part method") {
  ExperimentConfig c =
      parse_config("example = peaks4\nmethod = ssn_real_part\ngrid_n = 16\n");
  c.output_dir = fresh_dir("realpart").string();
  const RunOutcome out = run_experiment(c);
  const json r = json::parse(out.report_json);
  CHECK(r["ssn_real_part"]["real_part_operator"]["invertible"] == true);
  CHECK(fs::exists(fs::path(c.output_dir) / "ssn_real_part_mu.txt"));

  ExperimentConfig big = parse_config("example = peaks4\nmethod = ssn_real_part\n"
                                      "grid_n = 65\n");
  CHECK_THROWS_AS(run_experiment(big), Error);
  ExperimentConfig inh = parse_config("example = peaks7_inhomo\nmethod = ssn_real_part\n"
                                      "grid_n = 16\n");
  CHECK_THROWS_AS(run_experiment(inh), Error);
}

TEST_CASE("custom example") {
  ExperimentConfig c = parse_config(
      "example = custom\npeaks = 0.3,0.3,1; 0.7,0.7,-1\nk = 5\nmethod = tikhonov\n");
  c.output_dir = fresh_dir("custom").string();
  const RunOutcome out = run_experiment(c);
  CHECK(out.ok);
  const json r = json::parse(out.report_json);
  CHECK(r["grid"]["n"] == 20);
  CHECK(r.contains("tikhonov"));
  CHECK(!r.contains("ssn"));
}

TEST_CASE("examples json lists the three builtins") {
  const json e = json::parse(examples_json());
  REQUIRE(e.size() == 3);
  CHECK(e[0]["name"] == "peaks4");
  CHECK(e[1]["k"] == 24.0);
  CHECK(e[2]["medium"] == "inhomogeneous");
}
