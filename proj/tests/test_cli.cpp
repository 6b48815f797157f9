#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prequant/config.hpp"
#include "prequant/io.hpp"
#include "prequant/scenario.hpp"

using namespace prequant;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("prequant_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

int run(const std::string& config, const fs::path& out, const std::string& filter = {}) {
  std::ostringstream log;
  return run_scenario(config, ScenarioOptions{out, filter}, log);
}

}  // namespace

TEST_CASE("quantize the oscillator") {
  const fs::path out = scratch("quantize");
  CHECK(run("command = quantize\nf = z z*\nN = 3\n", out) == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "quantize.json"));
  CHECK(doc["observable"]["ladder"] == "a a†");
  const auto entries = doc["observable"]["matrix"]["entries"];
  for (int n = 0; n < 4; ++n) CHECK(entries[n * 4 + n][0].get<double>() == doctest::Approx(n + 1.0));
  CHECK(entries[1][0].get<double>() == 0.0);
  const auto manifest = nlohmann::json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["files"].size() == 2);
  CHECK(manifest["files"][0]["sha256"] == sha256_hex(slurp(out / "quantize.json")));
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const std::string cfg =
      "command = prequantum\nH = 0.5 p^2 + 0.5 q^2 + 0.2 q\ninitial = gaussian\np0 = 1\nn_p = 48\nn_q = 48\nt_final = 1\nsnapshots = 2\n";
  const fs::path a = scratch("det_a"), b = scratch("det_b");
#ifdef _OPENMP
  const int threads = omp_get_max_threads();
  omp_set_num_threads(1);
  CHECK(run(cfg, a) == 0);
  omp_set_num_threads(4);
  CHECK(run(cfg, b) == 0);
  omp_set_num_threads(threads);
#else
  CHECK(run(cfg, a) == 0);
  CHECK(run(cfg, b) == 0);
#endif
  CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
  CHECK(fs::exists(a / "snapshot_002.csv"));
}

TEST_CASE("dequantize and heisenberg") {
  const fs::path d = scratch("deq");
  CHECK(run("command = dequantize\noperator = ad a\n", d) == 0);
  const auto doc = nlohmann::json::parse(slurp(d / "dequantize.json"));
  CHECK(doc["hamiltonian"] == "z z*");
  const fs::path h = scratch("heis");
  CHECK(run("command = heisenberg\nf = z\nH = z z*\nt = 0.5\n", h) == 0);
  CHECK(slurp(h / "heisenberg.txt").find("z") != std::string::npos);
}

TEST_CASE("Stern-Gerlach defaults entangle by t = 1") {
  const fs::path out = scratch("sg");
  CHECK(run("command = sterngerlach\n", out) == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(doc["entangled"] == true);
  CHECK(doc["time"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(doc["schmidt"][1].get<double>() > 0.1);
  CHECK(fs::exists(out / "density_001.csv"));
}

TEST_CASE("mixed command") {
  const fs::path out = scratch("mixed");
  CHECK(run("command = mixed\nH0 = 0.5 p^2\nHQ = [[0, 1], [1, 0]]\ncoupling1_g = q\ncoupling1_mu = [[1, 0], [0, -1]]\n"
            "spinor = [1, 0]\ndt = 0.05\nsteps = 10\nn_p = 48\nn_q = 48\n",
            out) == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(doc["commuting"] == false);
  CHECK(doc["norm"].get<double>() == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("check command") {
  const fs::path out = scratch("check");
  CHECK(run("", out, "algebra.") == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "checks.json"));
  CHECK(doc.size() == 6);
  CHECK(run("", scratch("check_none"), "no-such-check") == 1);
}

TEST_CASE("invalid configurations") {
  const fs::path out = scratch("bad");
  CHECK_THROWS_AS(run("command = quantize\nf = z\nN = 3\ncolour = red\n", out), ConfigError);
  CHECK_THROWS_AS(run("command = fly\n", out), ConfigError);
  CHECK_THROWS_AS(run("f = z\n", out), ConfigError);
  CHECK_THROWS_AS(run("command = quantize\nf = z^3\nN = 2\n", out), ConfigError);
  CHECK_THROWS_AS(run("command = prequantum\nH = q^3\n", out), ConfigError);
  CHECK_THROWS_AS(run("command = sterngerlach\ndt = 0.3\n", out), ConfigError);
  CHECK_THROWS_AS(run("command = sterngerlach\nw_p = -1\n", out), ConfigError);
  try {
    run("command = quantize\nN = 4\nf = z +\n", out);
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("config:3") != std::string::npos);
  }
}
