#include <iostream>

#include "CLI11.hpp"
#include "sigresp/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Signaler-responder game: equilibria and Thompson Sampling runs"};
  app.require_subcommand(1);

  sigresp::SimulateOptions sim_opts;
  std::string sim_out;
  std::size_t sim_seeds = 0;
  auto* simulate = app.add_subcommand("simulate", "Run learning agents from a config");
  simulate->add_option("--config", sim_opts.config, "Experiment config JSON")->required();
  auto* out_opt = simulate->add_option("--out", sim_out, "Output directory (overrides config)");
  auto* seeds_opt = simulate->add_option("--seeds", sim_seeds, "Number of seeds (overrides config)");

  sigresp::EquilibriaOptions eq_opts;
  std::string eq_config, eq_params;
  auto* equilibria = app.add_subcommand("equilibria", "Print payoff matrix and pure Nash equilibria");
  auto* eq_config_opt = equilibria->add_option("--config", eq_config, "Experiment config JSON");
  auto* eq_params_opt =
      equilibria->add_option("--params", eq_params, "Inline parameters R,um,t,com,pn");
  eq_config_opt->excludes(eq_params_opt);

  sigresp::SweepOptions sweep_opts;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Tabulate equilibria over a parameter grid");
  sweep->add_option("--spec", sweep_opts.spec, "Sweep spec JSON")->required();
  sweep->add_flag("--simulate", sweep_opts.simulate, "Also run one simulation per grid point");
  auto* sweep_out_opt = sweep->add_option("--out", sweep_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : sigresp::kExitValidation;
  }

  if (simulate->parsed()) {
    if (*out_opt) sim_opts.out_dir = sim_out;
    if (*seeds_opt) sim_opts.seeds = sim_seeds;
    return sigresp::cmd_simulate(sim_opts, std::cout, std::cerr);
  }
  if (equilibria->parsed()) {
    if (*eq_config_opt) eq_opts.config = eq_config;
    if (*eq_params_opt) eq_opts.params = eq_params;
    return sigresp::cmd_equilibria(eq_opts, std::cout, std::cerr);
  }
  if (*sweep_out_opt) sweep_opts.out_file = sweep_out;
  return sigresp::cmd_sweep(sweep_opts, std::cout, std::cerr);
}
