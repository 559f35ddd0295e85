#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"
#include "tug/csv.hpp"
#include "tug/ingest.hpp"
#include "tug/report.hpp"
#include "tug/synth.hpp"

using namespace tug;
using testing::TempDir;

namespace {

std::string binary() {
  const char* bin = std::getenv("TUGTURN_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "TUGTURN_BIN must point at the tugturn binary");
  return bin;
}

int run_cli(const std::string& args) {
  const std::string cmd = binary() + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string run_capture(const std::string& args, const std::string& env = {}) {
  const std::string cmd = env + (env.empty() ? "" : " ") + binary() + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) out += buf;
  pclose(pipe);
  return out;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

/// One good trial CSV plus its config, returning (csv, toml).
std::pair<std::filesystem::path, std::filesystem::path> fixture(const TempDir& dir) {
  synth::SynthSpec spec;
  spec.seed = 12;
  const auto [rec, gt] = synth::generate_trial(spec);
  write_landmarks_csv(rec, dir / "walk.csv");
  synth::write_config_toml(spec, dir / "config.toml");
  return {dir / "walk.csv", dir / "config.toml"};
}

}  // namespace

TEST_CASE("--version exits cleanly and names the tool") {
  CHECK(run_cli("--version") == 0);
  const std::string out = run_capture("--version");
  CHECK(out.find("tugturn") != std::string::npos);
}

TEST_CASE("missing required flags exit with the usage code") {
  CHECK(run_cli("") == 2);
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  CHECK(run_cli("-i " + q(csv_path)) == 2);
  CHECK(run_cli("-i " + q(csv_path) + " -c " + q(toml_path)) == 2);
}

TEST_CASE("invalid values exit with the usage code") {
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  const std::string base =
      "-i " + q(csv_path) + " -c " + q(toml_path) + " -o " + q(dir / "out");
  CHECK(run_cli(base + " -y -1") == 2);
  CHECK(run_cli(base + " -y 0") == 2);
  CHECK(run_cli("-i " + q(dir / "nope.csv") + " -c " + q(toml_path) + " -o " +
                q(dir / "out")) == 2);
  const std::string err = run_capture(base + " -y -1");
  CHECK(err.find("UsageError") != std::string::npos);
}

TEST_CASE("the reserved interactive mode is refused") {
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  const std::string base =
      "-i " + q(csv_path) + " -c " + q(toml_path) + " -o " + q(dir / "out");
  CHECK(run_cli(base + " --interactive") == 2);
  const std::string err = run_capture(base + " --interactive");
  CHECK(err.find("not implemented") != std::string::npos);
}

TEST_CASE("a good trial processes end to end") {
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  const std::string base = "-i " + q(csv_path) + " -c " + q(toml_path) + " -o " +
                           q(dir / "out") + " --no-timestamp";
  CHECK(run_cli(base) == 0);
  for (const auto& p : bundle_paths(dir / "out", "walk").all())
    CHECK(std::filesystem::exists(p));
  CHECK(std::filesystem::exists(dir / "out" / "batch_summary.csv"));

  SUBCASE("stdout summarizes the batch") {
    const std::string out = run_capture(base + " --force");
    CHECK(out.find("1 ok, 0 failed") != std::string::npos);
  }

  SUBCASE("a rerun without --force fails without touching the outputs") {
    const auto before = csv::read_file(bundle_paths(dir / "out", "walk").json);
    CHECK(run_cli(base) == 1);
    CHECK(csv::read_file(bundle_paths(dir / "out", "walk").json) == before);
    CHECK(run_cli(base + " --force") == 0);
  }
}

TEST_CASE("a failing trial flips the exit code without aborting the batch") {
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  csv::write_file(dir / "broken.csv", "frame,left_hip_X\n0,1.0\n");
  const std::string base = "-i " + q(dir.path) + " -c " + q(toml_path) + " -o " +
                           q(dir / "out") + " --no-timestamp";
  CHECK(run_cli(base) == 1);
  // the good trial still produced its bundle
  CHECK(std::filesystem::exists(bundle_paths(dir / "out", "walk").json));
  const auto rows = csv::parse_file(dir / "out" / "batch_summary.csv");
  REQUIRE(rows.size() == 3);  // header + broken + walk
  CHECK(rows[1][0] == "broken");
  CHECK(rows[1][1] == "failed");
  CHECK(!rows[1][2].empty());
  CHECK(rows[2][0] == "walk");
  CHECK(rows[2][1] == "ok");
}

TEST_CASE("TUGKIT_LOG widens the stderr log") {
  TempDir dir;
  const auto [csv_path, toml_path] = fixture(dir);
  const std::string base = "-i " + q(csv_path) + " -c " + q(toml_path) + " -o " +
                           q(dir / "out") + " --no-timestamp --force";
  const std::string quiet = run_capture(base);
  CHECK(quiet.find("walk ok") == std::string::npos);
  const std::string chatty = run_capture(base, "env TUGKIT_LOG=info");
  CHECK(chatty.find("walk ok") != std::string::npos);
}
