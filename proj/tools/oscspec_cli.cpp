// oscspec: config-driven runner for the spectral experiments.
//
//   oscspec list
//   oscspec run config.json [--output DIR] [--threads N] [--seed S]
//
// Without --output the directory comes from the config's output_path, then from
// $OSCSPEC_OUTPUT_DIR, then ./oscspec-out.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "oscspec/error.hpp"
#include "oscspec/experiments.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical experiments on oscillatory Jacobi matrices and 1D Schroedinger operators"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "Show the experiment catalog");

  auto* run = app.add_subcommand("run", "Run the experiment described by a JSON config");
  std::string config_path;
  std::string output_dir;
  unsigned threads = 1;
  std::uint64_t seed = 0;
  run->add_option("config", config_path, "Experiment config (JSON)")->required();
  run->add_option("--output", output_dir, "Output directory (overrides the config)");
  run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* seed_opt = run->add_option("--seed", seed, "Random seed (overrides the config)");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& entry : oscspec::list_experiments()) {
      std::cout << entry.name << "\n  " << entry.description << "\n  theorem: " << entry.theorem
                << "\n  example: " << entry.sample_config << "\n";
    }
    return 0;
  }

  oscspec::ExperimentConfig config;
  try {
    config = oscspec::load_config(config_path);
  } catch (const oscspec::Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  if (seed_opt->count() > 0) config.seed = seed;

  oscspec::RunOptions options;
  options.output_dir = output_dir;
  options.threads = threads;
  const auto result = oscspec::run(config, options);
  if (result.exit_code == 1) {
    std::cerr << "error: " << result.error_message << "\n";
    return 1;
  }
  std::cout << oscspec::to_string(config.experiment) << ": " << result.verdict << "\n"
            << "  csv:     " << result.csv_path.string() << "\n"
            << "  summary: " << result.summary_path.string() << "\n";
  return result.exit_code;
}
