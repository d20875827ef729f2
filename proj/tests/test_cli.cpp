#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const fs::path work = fs::temp_directory_path() / "sparsesrc_cli_test";

int run(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = std::string(SPARSESRC_CLI) + " " + args + " > " + stdout_file +
                          " 2> " + (work / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

struct Fixture {
  Fixture() {
    fs::remove_all(work);
    fs::create_directories(work);
  }
};

}  // namespace

TEST_CASE_FIXTURE(Fixture, "show-examples prints JSON") {
  const auto out = work / "examples.json";
  CHECK(run("show-examples", out.string()) == 0);
  std::ifstream in(out);
  const auto j = nlohmann::json::parse(in);
  CHECK(j.size() == 3);
}

TEST_CASE_FIXTURE(Fixture, "usage and config errors exit with 2") {
  CHECK(run("") == 2);
  CHECK(run("frobnicate") == 2);
  CHECK(run("run " + (work / "missing.cfg").string()) == 2);
  write(work / "bad.cfg", "example = peaks5\n");
  CHECK(run("run " + (work / "bad.cfg").string()) == 2);
  write(work / "ok.cfg", "example = peaks4\n");
  CHECK(run("run " + (work / "ok.cfg").string() + " --method lasso") == 2);
  CHECK(run("batch " + (work / "nowhere").string()) == 2);
}

TEST_CASE_FIXTURE(Fixture, "run with overrides") {
  write(work / "p4.cfg", "example = peaks4\n");
  const auto out = work / "report.json";
  const auto dir = work / "out";
  CHECK(run("run " + (work / "p4.cfg").string() + " --output-dir " + dir.string() +
                " --seed 5 --method ssn --alpha 2e-5 --noise 0.02",
            out.string()) == 0);
  std::ifstream in(out);
  const auto r = nlohmann::json::parse(in);
  CHECK(r["config"]["seed"] == "5");
  CHECK(r["config"]["method"] == "ssn");
  CHECK(r["config"]["noise"] == "0.02");
  CHECK(r["alpha"]["value"] == 2e-5);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(!fs::exists(dir / "tikhonov_mu.txt"));
}

TEST_CASE_FIXTURE(Fixture, "solver failure exits with 3 and keeps artifacts") {
  write(work / "fail.cfg", "example = peaks4\nmethod = ssn\ninner_cap = 1\n");
  const auto dir = work / "failed";
  CHECK(run("run " + (work / "fail.cfg").string() + " --output-dir " + dir.string()) == 3);
  CHECK(fs::exists(dir / "report.json"));
  CHECK(fs::exists(dir / "ssn_mu.txt"));
}

TEST_CASE_FIXTURE(Fixture, "batch runs each config into its own directory") {
  const auto cfgs = work / "cfgs";
  fs::create_directories(cfgs);
  write(cfgs / "a.cfg", "example = peaks4\nmethod = tikhonov\n");
  write(cfgs / "b.cfg", "example = custom\npeaks = 0.5,0.5,1\nk = 5\nmethod = ssn\n");
  write(cfgs / "notes.txt", "ignored");
  const auto dir = work / "batch_out";
  CHECK(run("batch " + cfgs.string() + " --output-dir " + dir.string()) == 0);
  CHECK(fs::exists(dir / "a" / "tikhonov_mu.txt"));
  CHECK(fs::exists(dir / "b" / "ssn_mu.txt"));
  CHECK(!fs::exists(dir / "notes"));
}
