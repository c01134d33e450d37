#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commands.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ruelle::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ruelle_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_config(const fs::path& dir, const json& j) {
  const fs::path p = dir / "config.json";
  std::ofstream(p) << j.dump();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json geometric_config() {
  return {{"matrix", {{1, 1}, {1, 1}}},
          {"potential", {{"family", "geometric"}, {"r", 0.5}}},
          {"schedule", {{"m", {2, 5}}, {"Q", 8}}},
          {"output", {{"formats", {"json", "csv"}}}}};
}

int run(const std::string& cmd, const fs::path& config, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{"ruelle", cmd, "--config", config.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace

TEST_CASE("every command succeeds on a valid config") {
  const auto dir = scratch("all");
  const auto cfg = write_config(dir, geometric_config());
  for (const auto& name : command_names()) CHECK_MESSAGE(run(name, cfg) == kExitOk, name);
  CHECK(fs::exists(dir / "out" / "zeta.json"));
  CHECK(fs::exists(dir / "out" / "trace_check_q2.dat"));
  CHECK(fs::exists(dir / "out" / "verify.jsonl"));
}

TEST_CASE("reruns are byte-identical") {
  const auto dir = scratch("rerun");
  const auto cfg = write_config(dir, geometric_config());
  REQUIRE(run("zeta", cfg, {"--out", (dir / "a").string()}) == kExitOk);
  REQUIRE(run("zeta", cfg, {"--out", (dir / "b").string()}) == kExitOk);
  for (const char* f : {"zeta.json", "zeta_coeffs.csv", "zeta_products.csv", "zeta_defects.csv"})
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("csv carries the json numbers") {
  const auto dir = scratch("csv");
  json cfg = geometric_config();
  cfg["matrix"] = {{1, 1}, {1, 0}};
  cfg["potential"] = {{"family", "constant"}, {"value", 0.1}};
  const auto path = write_config(dir, cfg);
  REQUIRE(run("spectrum", path) == kExitOk);
  const json doc = json::parse(slurp(dir / "out" / "spectrum.json"));
  std::istringstream csv(slurp(dir / "out" / "spectrum.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "re,im,multiplicity");
  std::size_t i = 0;
  while (std::getline(csv, line)) {
    const auto c1 = line.find(','), c2 = line.rfind(',');
    CHECK(line.substr(0, c1) == doc["eigenvalues"][i][0].dump());
    CHECK(line.substr(c1 + 1, c2 - c1 - 1) == doc["eigenvalues"][i][1].dump());
    ++i;
  }
  CHECK(i == doc["eigenvalues"].size());
}

TEST_CASE("config errors exit 2") {
  const auto dir = scratch("config");
  CHECK(run("entropy", write_config(dir, json{{"potential", {{"family", "constant"}}}})) == kExitConfig);
  CHECK(run("entropy", write_config(dir, json{{"matrix", {{0, 1}, {1, 0}}}})) == kExitConfig);
  CHECK(run("spectrum", write_config(dir, json{{"matrix", {{1, 1}, {1, 1}}}, {"potential", {{"family", "wavy"}}}})) ==
        kExitConfig);
  CHECK(run("entropy", dir / "missing.json") == kExitConfig);
  CHECK(run("entropy", write_config(dir, geometric_config()), {"--format", "xml"}) == kExitConfig);
  std::ofstream(dir / "broken.json") << "{\"matrix\": [[1,";
  CHECK(run("entropy", dir / "broken.json") == kExitConfig);
}

TEST_CASE("computation errors exit 3") {
  const auto dir = scratch("compute");
  json cfg = geometric_config();
  cfg["schedule"]["m"] = {2, 40};
  CHECK(run("spectrum", write_config(dir, cfg)) == kExitCompute);
}

TEST_CASE("strict mode") {
  const auto dir = scratch("strict");
  json cfg = geometric_config();
  cfg["schedule"]["m"] = {2, 4};
  CHECK(run("verify", write_config(dir, cfg), {"--strict"}) == kExitOk);
  cfg["corruption"] = {{"c2_scale", 0.5}};
  const auto bad = write_config(dir, cfg);
  CHECK(run("verify", bad, {"--strict"}) == kExitViolation);
  CHECK(run("verify", bad) == kExitOk);
  bool saw_failure = false;
  std::istringstream lines(slurp(dir / "out" / "verify.jsonl"));
  for (std::string line; std::getline(lines, line);)
    if (!json::parse(line)["satisfied"].get<bool>()) saw_failure = true;
  CHECK(saw_failure);
}
