#include "burgers/config.hpp"
#include "burgers/error.hpp"
#include "burgers/experiment.hpp"
#include "burgers/parallel.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace {

constexpr int kExitAssertion = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int run_scenario(const std::string& scenario, const std::string& config_path, const std::string& out_dir,
                 int threads) {
  burgers::ScenarioConfig cfg;
  try {
    cfg = burgers::load_config(scenario, config_path);
  } catch (const burgers::ArgumentError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitConfig;
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (threads > 0) burgers::set_thread_count(threads);

  try {
    const burgers::RunReport report = burgers::run(cfg);
    for (const auto& a : report.assertions) {
      std::cout << (a.passed ? "PASS " : "FAIL ") << a.id;
      if (a.criterion > 0) std::cout << " [criterion " << a.criterion << "]";
      std::cout << ": " << a.description << " (value " << burgers::format_double(a.value);
      if (!a.detail.empty()) std::cout << "; " << a.detail;
      std::cout << ")\n";
    }
    std::cout << "wrote " << report.files.size() << " files to " << cfg.output_dir << " in "
              << report.runtime_seconds << " s\n";
    return report.all_passed() ? 0 : kExitAssertion;
  } catch (const burgers::ArgumentError& e) {
    std::cerr << "invalid config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const burgers::NumericalError& e) {
    std::cerr << "numerical failure in " << scenario << ": " << e.what() << "\n";
    return kExitNumerical;
  } catch (const burgers::PropertyViolation& e) {
    std::cerr << "property violated in " << scenario << ": " << e.what() << "\n";
    return kExitAssertion;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cole-Hopf / forced Burgers numerical laboratory"};
  app.footer(burgers::config_help() +
             "\nThread count: --threads N, else the BURGERS_LAB_THREADS environment variable, else 1.\n"
             "Exit codes: 0 all assertions pass, 1 an assertion failed, 2 invalid config, 3 numerical failure.\n");
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::string selected;
  for (const auto& name : burgers::kScenarios) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " scenario");
    sub->add_option("--config", config_path, "scenario config file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides run.output_dir)");
    sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    sub->callback([&selected, name] { selected = name; });
  }

  std::string csv, x_col = "t", y_col;
  CLI::App* fit = app.add_subcommand("fit", "least-squares power law y = c x^p over two CSV columns");
  fit->add_option("csv", csv, "CSV file with a header row")->required();
  fit->add_option("--x", x_col, "x column")->capture_default_str();
  fit->add_option("--y", y_col, "y column")->required();
  fit->callback([&selected] { selected = "fit"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  if (selected == "fit") {
    try {
      const burgers::PowerLawFit f = burgers::fit_exponent(csv, x_col, y_col);
      std::cout << "slope " << burgers::format_double(f.slope) << "\nintercept "
                << burgers::format_double(f.intercept) << "\nresidual " << burgers::format_double(f.residual)
                << "\n";
      return 0;
    } catch (const burgers::ArgumentError& e) {
      std::cerr << e.what() << "\n";
      return kExitConfig;
    }
  }
  return run_scenario(selected, config_path, out_dir, threads);
}
