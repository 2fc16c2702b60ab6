#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

#include "hpq/cli/commands.hpp"
#include "hpq/cli/config.hpp"
#include "hpq/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Hermite-Pade polynomials and their zero distributions"};
  std::string command, config_path;
  hpq::cli::Overrides o;
  app.add_option("command", command, "hp | equilibrium | converge | figures | verify")
      ->required()
      ->check(CLI::IsMember({"hp", "equilibrium", "converge", "figures", "verify"}));
  app.add_option("--config", config_path, "TOML run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--n", o.n, "single order n (replaces the configured list)")->check(CLI::NonNegativeNumber);
  app.add_option("--cells", o.cells, "cells per interval of F")->check(CLI::PositiveNumber);
  app.add_option("--precision", o.precision, "working precision in bits")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "output directory");
  app.add_option("--seed", o.seed, "seed for random probe measures");
  CLI11_PARSE(app, argc, argv);

  hpq::cli::RunConfig cfg;
  try {
    cfg = hpq::cli::load_config(config_path);
    hpq::cli::apply_overrides(cfg, o, std::getenv("HPQ_PRECISION_BITS"));
  } catch (const hpq::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return hpq::cli::run(*hpq::cli::parse_command(command), cfg, std::cerr);
}
