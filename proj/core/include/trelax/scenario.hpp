#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trelax/grid.hpp"
#include "trelax/model.hpp"
#include "trelax/region.hpp"
#include "trelax/viscous.hpp"

// Run configuration stored as a flat key=value file.  Unknown keys are
// rejected, missing keys fall back to the defaults below, and serialization
// always emits every key in a fixed order so a parsed file round-trips to the
// same bytes.

namespace trelax {

struct Scenario {
  ModelConfig model{};
  Region region{};
  Grid grid{};
  SolverParams solver{};

  // uniform | riemann | smooth-bump; keys of the other profiles are parsed
  // and kept but only the selected profile's keys shape the initial data.
  std::string profile = "riemann";
  double rho_uniform = 0.4;
  std::optional<double> m_uniform{}; // empty = equilibrium momentum
  double rho_left = 0.2;
  double rho_right = 0.5;
  std::optional<double> m_left{};
  std::optional<double> m_right{};
  double jump_x = 0.0;
  double rho_base = 0.3;
  double bump_amplitude = 0.2;
  std::optional<double> m_bump{};
  double floor_shift = 0.0;

  std::vector<double> snapshot_times{}; // empty = final time only
  std::string output_dir = "out";
  std::uint64_t seed = 12345;

  void validate() const; // throws std::invalid_argument
};

Scenario parse_scenario_text(const std::string& text);
Scenario parse_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& sc);

// Samples the configured profile onto the grid.  Momentum keys left at "eq"
// evaluate h at the shifted density, so such data start exactly on the
// equilibrium curve.
FieldPair build_initial(const Scenario& sc);

// min/max of the sampled densities, widened slightly so uniform data still
// give a nonempty scan interval.
Interval data_hull(const FieldPair& f);

} // namespace trelax
