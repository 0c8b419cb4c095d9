#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "allee/driver/config.hpp"
#include "allee/driver/experiment.hpp"
#include "allee/driver/manifest.hpp"

using namespace allee;
using namespace allee::driver;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

ConfigError parse_error(std::string_view text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted");
  return ConfigError(false, {});
}

std::string small_run(const fs::path& out) {
  return "command = simulate\nseed = 11\noutput_dir = " + out.string() +
         "\n[kinetics]\ngrowth = 2.2\n[spatial]\nlength = 50\n[grid]\npoints = 65\ndt = 0.05\n"
         "[run]\ninitial = noise\nduration = 20\nsummary_every = 1\nsnapshot_every = 10\nclassify_window = 10\n";
}
}  // namespace

TEST_SUITE("driver-io") {
  TEST_CASE("shipped diagram config parses") {
    const auto cfg = load_config(fs::path(ALLEE_CONFIG_DIR) / "temporal_diagram.cfg");
    CHECK(cfg.command == Command::TemporalDiagram);
    CHECK(cfg.kinetics.saturation == doctest::Approx(0.07));
    CHECK(cfg.sweep.growth_steps == 171);
    CHECK_FALSE(cfg.stochastic());
  }

  TEST_CASE("every shipped config parses") {
    int count = 0;
    for (const auto& entry : fs::directory_iterator(ALLEE_CONFIG_DIR)) {
      if (entry.path().extension() != ".cfg") continue;
      CAPTURE(entry.path().string());
      CHECK_NOTHROW(load_config(entry.path()));
      ++count;
    }
    CHECK(count >= 10);
  }

  TEST_CASE("unknown key is a parse error naming the key") {
    const auto e = parse_error("command = equilibria\n[kinetics]\nsaturaton = 0.1\n");
    CHECK_FALSE(e.validation());
    CHECK(std::string(e.what()).find("ParseError") != std::string::npos);
    CHECK(std::string(e.what()).find("saturaton") != std::string::npos);
    REQUIRE(e.issues().size() == 1);
    CHECK(e.issues()[0].line == 3);
  }

  TEST_CASE("stochastic run without a seed fails validation") {
    const auto e = parse_error("command = simulate\n[run]\ninitial = noise\n");
    CHECK(e.validation());
    CHECK(std::string(e.what()).find("ValidationError") != std::string::npos);
    CHECK(std::string(e.what()).find("seed") != std::string::npos);
  }

  TEST_CASE("all problems are reported together") {
    const auto e = parse_error("command = equilibria\nbogus = 1\n[kinetics]\ngrowth = abc\n[nowhere]\n");
    CHECK(e.issues().size() >= 3);
  }

  TEST_CASE("out-of-range values fail validation") {
    const auto e = parse_error("command = equilibria\n[kinetics]\nconversion = -1\n[spatial]\nlength = 0\n");
    CHECK(e.validation());
    CHECK(e.issues().size() >= 2);
  }

  TEST_CASE("seeded runs reproduce their manifest") {
    const fs::path root = fs::temp_directory_path() / "allee_driver_test";
    fs::remove_all(root);
    const auto a = run_experiment(parse_config(small_run(root / "a")));
    const auto b = run_experiment(parse_config(small_run(root / "b")));
    CHECK(slurp(a.manifest) == slurp(b.manifest));
    CHECK(fs::exists(root / "a" / "summary.csv"));
    CHECK(fs::exists(root / "a" / "final.csv"));
    CHECK(slurp(root / "a" / "final.csv").rfind("# t=", 0) == 0);
    fs::remove_all(root);
  }

  TEST_CASE("manifest hashes") {
    const fs::path dir = fs::temp_directory_path() / "allee_manifest_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::ofstream(dir / "abc.txt") << "abc";
    CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto m = write_manifest(dir, {dir / "abc.txt"});
    CHECK(slurp(m) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad  abc.txt\n");
    fs::remove_all(dir);
  }
}
