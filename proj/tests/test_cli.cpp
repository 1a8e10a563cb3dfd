#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hcspec/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("hcspec_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(HCSPEC_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli exit codes") {
  auto dir = scratch("codes");
  const std::string out = " --out-dir " + dir.string();
  CHECK(run("bands --lmax 200" + out) == 0);
  CHECK(run("bands --mode nope" + out) == 2);
  CHECK(run("bands --alpha 0.9" + out) == 2);
  CHECK(run("bands --lmax abc" + out) == 2);
  CHECK(run("spectrum --n 0" + out) == 2);
  CHECK(run("nosuchcommand") == 2);
  CHECK(run("verify dispersion" + out) == 0);
  CHECK(run("verify nq --n 1 --mesh-h 0.125" + out) == 1);
  CHECK(run("spectrum --medium homogeneous --solver transfer --hi 1e12" + out) == 3);
  fs::remove_all(dir);
}

TEST_CASE("cli outputs carry version and config and are reproducible") {
  auto a = scratch("rep_a"), b = scratch("rep_b");
  REQUIRE(run("spectrum --medium defect --n 8 --hi 100 --solver both --threads 1 --out-dir " + a.string()) == 0);
  REQUIRE(run("spectrum --medium defect --n 8 --hi 100 --solver both --threads 0 --out-dir " + b.string()) == 0);
  const auto csv = slurp(a / "spectrum.csv");
  CHECK(csv.rfind(std::string("# hcspec ") + HCSPEC_VERSION, 0) == 0);
  CHECK(csv.find("# config ") != std::string::npos);
  CHECK(slurp(b / "spectrum.csv").find("\"threads\":0") != std::string::npos);
  auto ja = hcs::read_json_file(a / "spectrum.json");
  CHECK(ja["version"] == HCSPEC_VERSION);
  CHECK(ja["config"]["n"] == 8);

  // identical config (including the output directory) gives identical bytes
  const auto csv1 = slurp(a / "spectrum.csv"), json1 = slurp(a / "spectrum.json");
  REQUIRE(run("spectrum --medium defect --n 8 --hi 100 --solver both --threads 1 --out-dir " + a.string()) == 0);
  CHECK(slurp(a / "spectrum.csv") == csv1);
  CHECK(slurp(a / "spectrum.json") == json1);
  // thread count changes only the echoed config
  auto body = [](const std::string& s) { return s.substr(s.find("\nindex")); };
  CHECK(body(slurp(b / "spectrum.csv")) == body(csv1));
  for (const auto& d : {a, b}) fs::remove_all(d);
}

TEST_CASE("cli config file and flag precedence") {
  auto dir = scratch("cfg");
  {
    std::ofstream f(dir / "cfg.json");
    f << R"({"n": 4, "hi": 50.0, "bc": "neumann"})";
  }
  REQUIRE(run("spectrum --config " + (dir / "cfg.json").string() + " --hi 60 --out-dir " + dir.string()) == 0);
  auto j = hcs::read_json_file(dir / "spectrum.json");
  CHECK(j["config"]["n"] == 4);
  CHECK(j["config"]["bc"] == "neumann");
  CHECK(j["config"]["hi"] == 60.0);
  {
    std::ofstream f(dir / "bad.json");
    f << R"({"unknown_key": 1})";
  }
  CHECK(run("spectrum --config " + (dir / "bad.json").string() + " --out-dir " + dir.string()) == 2);
  CHECK(run("spectrum --config " + (dir / "missing.json").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli output directory from the environment") {
  auto dir = scratch("env");
  const std::string cmd = "HCSPEC_OUT_DIR=" + dir.string() + " " + HCSPEC_CLI_PATH + " bands --lmax 100 >/dev/null 2>&1";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(fs::exists(dir / "bands.csv"));
  CHECK(fs::exists(dir / "curve.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cli profile dump and validate") {
  auto dir = scratch("profile");
  const auto file = (dir / "p.json").string();
  REQUIRE(run("profile dump --n 2 --output " + file) == 0);
  CHECK(run("profile validate " + file) == 0);
  {
    std::ofstream f(dir / "broken.json");
    f << R"({"segments": [{"length": 1, "label": "glass"}]})";
  }
  CHECK(run("profile validate " + (dir / "broken.json").string()) == 2);
  fs::remove_all(dir);
}

TEST_CASE("cli defect writes mode files") {
  auto dir = scratch("defect");
  REQUIRE(run("defect --n 16 --bc periodic --modes --out-dir " + dir.string()) == 0);
  auto j = hcs::read_json_file(dir / "defect_report.json");
  REQUIRE(j["reports"].size() >= 4);
  int modes = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename().string().rfind("mode_", 0) == 0) ++modes;
  CHECK(modes == static_cast<int>(j["reports"].size()));
  fs::remove_all(dir);
}
