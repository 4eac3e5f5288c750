#include <exception>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trelax/commands.hpp"
#include "trelax/scenario.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Traffic relaxation laboratory: viscous two-field solver, scalar oracle and region audits"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::vector<double> taus{1e-1, 3e-2, 1e-2, 3e-3, 1e-3};
  double exponent = 2.0 / 3.0;

  auto* sim = app.add_subcommand("simulate",
                                 "Run the viscous solver and write snapshots plus a run report");
  sim->add_option("scenario", scenario_path, "scenario file (key=value)")->required();

  auto* sweep = app.add_subcommand("sweep",
                                   "Run a relaxation sweep against the scalar oracle and write sweep.csv");
  sweep->add_option("scenario", scenario_path, "scenario file (key=value)")->required();
  sweep->add_option("--taus", taus, "relaxation times, strictly decreasing")
      ->delimiter(',');
  sweep->add_option("--exp", exponent, "coupling exponent, epsilon = tau^exp");

  auto* check = app.add_subcommand("check",
                                   "Audit region and relaxation hypotheses for the scenario's data");
  check->add_option("scenario", scenario_path, "scenario file (key=value)")->required();

  auto* table = app.add_subcommand("riemann-table",
                                   "Print invariants, wave speeds and region slacks for the scenario states");
  table->add_option("scenario", scenario_path, "scenario file (key=value)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? trelax::kExitOk : trelax::kExitValidation;
  }

  trelax::Scenario sc;
  try {
    sc = trelax::parse_scenario(scenario_path);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return trelax::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return trelax::kExitRuntime;
  }

  if (sim->parsed()) return trelax::cmd_simulate(sc, std::cout);
  if (sweep->parsed()) return trelax::cmd_sweep(sc, taus, exponent, std::cout);
  if (check->parsed()) return trelax::cmd_check(sc, std::cout);
  if (table->parsed()) return trelax::cmd_riemann_table(sc, std::cout);
  return trelax::kExitValidation;
}
