#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cml/cli.hpp"
#include "cml/csvio.hpp"
#include "cml/errors.hpp"

using namespace cml;

namespace {

int call(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::vector<const char*> argv{"cml"};
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

std::string body(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, b;
  while (std::getline(is, line))
    if (!line.empty() && line[0] != '#') b += line + "\n";
  return b;
}

}  // namespace

TEST_CASE("run config round trip") {
  RunConfig c;
  c.command = "moments";
  c.x = 30000;
  c.mode = "second";
  c.cache_dir = "/tmp/x";
  const RunConfig d = RunConfig::parse(c.serialize());
  CHECK(d.serialize() == c.serialize());
  CHECK_THROWS_AS(RunConfig::parse("nonsense = 1"), Error);
  CHECK_THROWS_AS(RunConfig::parse("x = abc"), Error);
}

TEST_CASE("exit codes") {
  CHECK(call({"moments", "--theta", "0.5", "--mode", "mollified", "--x", "1000"}) == kExitConfig);
  CHECK(call({"frobnicate"}) == kExitConfig);
  CHECK(call({"moments", "--mode", "third", "--x", "1000"}) == kExitConfig);
  CHECK(call({"verify", "--q", "4,0"}) == kExitConfig);
  CHECK(call({"poisson", "--q", "1,0", "--m", "100"}) == kExitOk);

  const auto dir = std::filesystem::temp_directory_path() / "cml_cli_cache";
  std::filesystem::remove_all(dir);
  CHECK(call({"moments", "--x", "1000", "--cache", dir.string()}) == kExitOk);
  CHECK(call({"moments", "--x", "1000", "--cache", dir.string(), "--afe-t", "5"}) == kExitCache);
  std::filesystem::remove_all(dir);
}

TEST_CASE("moments csv is self describing and reproducible") {
  std::string a, b;
  REQUIRE(call({"--workers", "1", "moments", "--x", "3000", "--grid", "2", "--mode", "second"}, &a) == kExitOk);
  REQUIRE(call({"--workers", "1", "moments", "--x", "3000", "--grid", "2", "--mode", "second"}, &b) == kExitOk);
  CHECK(a.find("# config mode = second") != std::string::npos);
  CHECK(a.find("# fit S2/X") != std::string::npos);
  CHECK(body(a) == body(b));
  int rows = 0;
  std::istringstream is(body(a));
  std::string line;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 3);  // header plus two grid points
}

TEST_CASE("config file supplies defaults") {
  const auto path = std::filesystem::temp_directory_path() / "cml_cfg.txt";
  {
    std::ofstream os(path);
    os << "m = 400\nc = 4,3\n";
  }
  std::string out;
  CHECK(call({"--config", path.string(), "poisson"}, &out) == kExitOk);
  CHECK(out.find("# config c = 4,3") != std::string::npos);
  std::filesystem::remove(path);
}
