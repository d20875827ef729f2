// Command-line runner: `run <config>`, `batch <dir>`, `show-examples`.
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsesrc/sparsesrc.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Overrides {
  std::optional<std::string> output_dir;
  std::optional<std::string> seed;
  std::optional<std::string> method;
  std::optional<std::string> alpha;
  std::optional<std::string> noise;
};

int exit_code(ssrc_status status) {
  switch (status) {
    case SSRC_OK: return kExitOk;
    case SSRC_ERR_CONFIG:
    case SSRC_ERR_INVALID_ARGUMENT:
    case SSRC_ERR_TOO_LARGE: return kExitConfig;
    default: return kExitSolver;
  }
}

std::string report_text(const ssrc_report* report) {
  size_t needed = 0;
  ssrc_report_json(report, nullptr, 0, &needed);
  std::string text(needed, '\0');
  ssrc_report_json(report, text.data(), text.size(), &needed);
  text.resize(needed - 1);
  return text;
}

int run_one(const fs::path& path, const Overrides& o, std::optional<fs::path> batch_dir) {
  ssrc_config* cfg = nullptr;
  ssrc_status st = ssrc_config_load(path.string().c_str(), &cfg);
  if (st != SSRC_OK) {
    std::cerr << "error: " << ssrc_last_error() << '\n';
    return exit_code(st);
  }
  auto set = [&](const char* key, const std::optional<std::string>& value) {
    if (!value || st != SSRC_OK) return;
    st = ssrc_config_set(cfg, key, value->c_str());
    if (st != SSRC_OK) std::cerr << "error: --" << key << ": " << ssrc_last_error() << '\n';
  };
  set("seed", o.seed);
  set("method", o.method);
  set("alpha", o.alpha);
  set("noise", o.noise);
  if (batch_dir) {
    const std::string dir = (*batch_dir / path.stem()).string();
    set("output_dir", std::optional<std::string>(dir));
  } else {
    set("output_dir", o.output_dir);
  }
  if (st != SSRC_OK) {
    ssrc_config_destroy(cfg);
    return exit_code(st);
  }

  ssrc_report* report = nullptr;
  st = ssrc_run(cfg, &report);
  const std::string run_error = ssrc_last_error();
  ssrc_config_destroy(cfg);
  if (report) {
    if (!batch_dir) std::cout << report_text(report);
    ssrc_report_destroy(report);
  }
  if (st != SSRC_OK) {
    std::cerr << "error: " << path.string() << ": " << run_error << '\n';
  }
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse acoustic source reconstruction"};
  app.require_subcommand(1);
  Overrides o;
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--output-dir", o.output_dir, "Directory for the run artifacts");
    cmd->add_option("--seed", o.seed, "Noise seed");
    cmd->add_option("--method", o.method, "ssn, tikhonov, both or ssn_real_part");
    cmd->add_option("--alpha", o.alpha, "Regularisation weight");
    cmd->add_option("--noise", o.noise, "Relative noise level");
  };

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment configuration");
  run->add_option("config", config_path, "Configuration file")->required();
  add_overrides(run);

  std::string batch_path;
  auto* batch = app.add_subcommand("batch", "Run every *.cfg file in a directory");
  batch->add_option("dir", batch_path, "Directory of configuration files")->required();
  add_overrides(batch);

  app.add_subcommand("show-examples", "Print the builtin examples as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (app.got_subcommand("show-examples")) {
    size_t needed = 0;
    ssrc_examples_json(nullptr, 0, &needed);
    std::string text(needed, '\0');
    if (ssrc_examples_json(text.data(), text.size(), &needed) != SSRC_OK) {
      std::cerr << "error: " << ssrc_last_error() << '\n';
      return kExitSolver;
    }
    std::cout << text.c_str();
    return kExitOk;
  }

  if (app.got_subcommand("run")) return run_one(config_path, o, std::nullopt);

  std::error_code ec;
  if (!fs::is_directory(batch_path, ec)) {
    std::cerr << "error: '" << batch_path << "' is not a directory\n";
    return kExitConfig;
  }
  std::vector<fs::path> configs;
  for (const auto& entry : fs::directory_iterator(batch_path)) {
    if (entry.is_regular_file() && entry.path().extension() == ".cfg") {
      configs.push_back(entry.path());
    }
  }
  std::sort(configs.begin(), configs.end());
  if (configs.empty()) {
    std::cerr << "error: no *.cfg files in '" << batch_path << "'\n";
    return kExitConfig;
  }
  const fs::path base = o.output_dir.value_or("sparsesrc-out");
  int worst = kExitOk;
  for (const auto& path : configs) {
    const int code = run_one(path, o, base);
    std::cerr << path.filename().string() << ": exit " << code << '\n';
    worst = std::max(worst, code);
  }
  return worst;
}
