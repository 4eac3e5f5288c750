#pragma once

#include <iosfwd>
#include <vector>

#include "trelax/scenario.hpp"

// Subcommand entry points shared by the command-line tool and the tests.
// Each returns a process exit code: 0 on success, 1 for validation or
// hypothesis failures, 2 for runtime failures.

namespace trelax {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

// Runs the viscous solver, writes numbered snapshots plus report.txt into the
// scenario's output directory; a failing hypothesis audit produces a warning
// block, not an error.
int cmd_simulate(const Scenario& sc, std::ostream& log);

// Audits the region/relaxation hypotheses and the analytic identities; exit 0
// only when every hull-level check passes.
int cmd_check(const Scenario& sc, std::ostream& log);

// For each tau (strictly decreasing) sets epsilon = tau^exponent, runs the
// viscous solver and the scalar oracle from the same densities, and writes
// sweep.csv; individual run failures are recorded in their row.
int cmd_sweep(const Scenario& sc, const std::vector<double>& taus, double exponent,
              std::ostream& log);

// Prints invariants, wave speeds and region slacks for the scenario's states
// of interest.
int cmd_riemann_table(const Scenario& sc, std::ostream& log);

} // namespace trelax
