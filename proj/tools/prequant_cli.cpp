#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "prequant/config.hpp"
#include "prequant/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Prequantum mechanics, Toeplitz quantization and mixed classical-quantum dynamics"};
  std::string config_path, output = "out", check_filter;
  int threads = 0;
  app.add_option("--config", config_path, "Scenario file with `key = value` lines")->check(CLI::ExistingFile);
  app.add_option("--output", output, "Output directory")->capture_default_str();
  app.add_option("--threads", threads, "Worker threads (0 = runtime default)")->check(CLI::NonNegativeNumber);
  app.add_option("--check", check_filter, "Run the invariant checks whose name contains this text");
  CLI11_PARSE(app, argc, argv);

  if (config_path.empty() && check_filter.empty()) {
    std::cerr << "error: --config is required unless --check is given\n";
    return 2;
  }
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  std::string text;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    prequant::ScenarioOptions options;
    options.output = output;
    options.check_filter = check_filter;
    return prequant::run_scenario(text, options, std::cout, config_path.empty() ? "config" : config_path);
  } catch (const prequant::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
