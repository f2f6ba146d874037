#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// End-to-end checks of the installed binary surface: subcommands, flag
// overrides and the documented exit codes (0 ok, 2 config error).

#ifndef FIELDLAB_BIN
#define FIELDLAB_BIN "fieldlab"
#endif

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FIELDLAB_BIN) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("fieldlab_cli_" + tag);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cli exit codes: success and config errors") {
  const auto out = temp_dir("ok");
  CHECK(run_cli("epr --out " + out.string() + " --seed 3") == 0);
  CHECK(std::filesystem::exists(out / "table.csv"));
  CHECK(std::filesystem::exists(out / "manifest.json"));

  // invalid flag value -> config error, exit 2
  CHECK(run_cli("epr --filter bogus --out " + temp_dir("bad_filter").string()) == 2);

  // unknown key in the config file -> exit 2
  const auto dir = temp_dir("bad_config");
  std::filesystem::create_directories(dir);
  const auto config = dir / "config.json";
  std::ofstream(config) << R"({"params": {"mystery": 1}})";
  CHECK(run_cli("two_slit --config " + config.string() + " --out " + dir.string()) == 2);

  // unparsable config file -> exit 2
  std::ofstream(config) << "{ nope";
  CHECK(run_cli("two_slit --config " + config.string() + " --out " + dir.string()) == 2);
}

TEST_CASE("cli flag overrides reach the experiment") {
  const auto out = temp_dir("flags");
  CHECK(run_cli("decohere --c 0.5 --n-max 8 --out " + out.string()) == 0);
  std::ifstream decay(out / "decay.csv");
  REQUIRE(decay);
  std::string line, last;
  while (std::getline(decay, line)) {
    if (!line.empty()) last = line;
  }
  CHECK(last.substr(0, 2) == "8,");
}
