#include <iostream>

#include <CLI11.hpp>

#include "wmr/errors.hpp"
#include "wmr_cli/commands.hpp"

int main(int argc, char** argv) {
  using wmr::cli::RunConfig;
  RunConfig config;
  std::string mode;
  std::string format;
  int t = 0;

  CLI::App app{"wmr: interference alignment and NDT bounds for full-duplex wireless MapReduce"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", config.out, "Output file (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  };
  auto scheme_opts = [&](CLI::App* sub) {
    sub->add_option("--K", config.K, "Number of nodes")->required();
    sub->add_option("--r", config.r, "Computation load")->required();
    sub->add_option("--eta", config.eta, "Alignment order")->check(CLI::PositiveNumber);
  };
  auto random_opts = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "Base seed; trial i uses seed + i");
    sub->add_option("--mode", mode, "modular or float")->check(CLI::IsMember({"modular", "float"}));
    sub->add_option("--tol", config.tol, "Relative singular-value tolerance (float mode)");
    sub->add_option("--trials", config.trials, "Number of seeds");
  };

  auto* bounds = app.add_subcommand("bounds", "Bound curves over r in [1, K]");
  bounds->add_option("--K", config.K, "Number of nodes")->required();
  bounds->add_option("--grid-step", config.grid_step, "Grid step as p/q");
  bounds->add_option("--digits", config.digits, "Decimal digits in CSV")->check(CLI::Range(1, 40));
  common(bounds);

  auto* scheme = app.add_subcommand("scheme", "Codewords, precoders and dimension audit");
  scheme_opts(scheme);
  common(scheme);

  auto* verify = app.add_subcommand("verify-rank", "Certify full column rank of every Lambda_j");
  scheme_opts(verify);
  random_opts(verify);
  common(verify);

  auto* simulate = app.add_subcommand("simulate", "Noiseless shuffle round trip");
  scheme_opts(simulate);
  random_opts(simulate);
  simulate->add_option("--max-error", config.max_error, "Pass threshold on relative recovery error");
  simulate->add_option("--noise", config.noise, "Additive noise standard deviation (float mode)");
  common(simulate);

  auto* converse = app.add_subcommand("converse", "Mass minimization and converse assembly");
  converse->add_option("--K", config.K, "Number of nodes")->required();
  converse->add_option("--r", config.r, "Computation load, p/q or integer")->required();
  converse->add_option("--N", config.N, "Number of files");
  converse->add_option("--t", t, "Cut size (default floor(K/2))");
  converse->add_flag("--oracle", config.oracle, "Cross-check against brute force");
  converse->add_option("--digits", config.digits, "Decimal digits in CSV")->check(CLI::Range(1, 40));
  common(converse);

  auto* lemmas = app.add_subcommand("lemma-tests", "Randomized checks of the two full-rank lemmas");
  random_opts(lemmas);
  common(lemmas);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wmr::cli::kParameterError;
  }

  config.subcommand = app.get_subcommands().front()->get_name();
  if (!mode.empty()) config.mode = mode;
  if (!format.empty()) config.format = format;
  if (converse->count("--t") > 0) config.t = t;
  try {
    config.max_block_length = wmr::cli::max_block_length_from_env(config.max_block_length);
  } catch (const wmr::ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << '\n';
    return wmr::cli::kParameterError;
  }
  return wmr::cli::dispatch(config, std::cout, std::cerr);
}
