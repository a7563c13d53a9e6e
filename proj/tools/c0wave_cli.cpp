#include "c0wave/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

void print_table(const c0wave::ExperimentResult& result) {
  std::printf("%-8s %5s %5s %3s %10s %6s %11s %11s %11s %9s %8s %s\n", "run", "group", "level", "pt",
              "tau", "N", "Linf_L2", "jump_err", "eta", "kappa", "rate", "status");
  for (const auto& r : result.rows) {
    std::printf("%-8s %5d %5d %3d %10.3e %6d %11.4e %11.4e %11.4e %9.3f %8.3f %s\n", r.run.c_str(),
                r.group, r.level, r.pt, r.tau, r.N, r.err.Linf_L2, r.err.jump_err, r.eta, r.kappa,
                r.rate_Linf_L2, r.status.c_str());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"C0-in-time Petrov-Galerkin wave solver experiments"};
  app.require_subcommand(1);
  auto* run = app.add_subcommand("run", "Run the suite described by a config file");
  std::string config_path;
  std::string out_path;
  std::string suite;
  std::uint64_t seed = 0;
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_path, "CSV output path (overrides the config)");
  run->add_option("--suite", suite, "Suite name (overrides the config)");
  auto* seed_opt = run->add_option("--seed", seed, "Random seed (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  c0wave::ExperimentConfig config;
  try {
    std::ifstream in(config_path);
    if (!in) throw c0wave::ConfigError({"cannot read config file '" + config_path + "'"});
    std::stringstream text;
    text << in.rdbuf();
    config = c0wave::parse_config(text.str());
    if (!suite.empty()) {
      try {
        config.suite = c0wave::parse_suite(suite);
      } catch (const std::invalid_argument& e) {
        throw c0wave::ConfigError({std::string("--suite: ") + e.what()});
      }
    }
    if (!out_path.empty()) config.output = out_path;
    if (*seed_opt) config.seed = seed;
    c0wave::validate_config(config);
  } catch (const c0wave::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }

  const auto result = c0wave::run_suite(config);
  print_table(result);
  try {
    c0wave::emit_csv(result, config.output);
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  std::cout << "wrote " << result.rows.size() << " rows to " << config.output << '\n';
  if (!result.all_ok()) {
    std::cerr << "one or more levels failed\n";
    return 2;
  }
  return 0;
}
