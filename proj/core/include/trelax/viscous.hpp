#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>

#include "trelax/grid.hpp"
#include "trelax/model.hpp"
#include "trelax/region.hpp"

// Explicit finite-volume solver for the viscous relaxation system
//
//   rho_t + (m - rho*P)_x      = eps * rho_xx
//   m_t   + (m^2/rho - m*P)_x  = eps * m_xx + (h(rho) - m) / tau
//
// Local Lax-Friedrichs interface fluxes plus central second differences,
// Strang-split around the pointwise relaxation, which is integrated exactly
// (rho is frozen there, so m decays to h(rho) with factor exp(-dt/tau) and the
// substep is stable for any stiffness).

namespace trelax {

struct SolverParams {
  double epsilon = 1e-3;   // viscosity, >= 0
  double tau = 1e-3;       // relaxation time, > 0
  double cfl = 0.4;        // advective CFL number, in (0, 1]
  double rho_floor = 1e-8; // positivity floor enforced after each update
  double t_final = 1.0;

  void validate() const;
};

struct FieldPair {
  std::vector<double> rho;
  std::vector<double> m;
  double t = 0.0;
};

// Cell-centered sampling of the initial profiles plus an optional uniform
// density shift.  Rejects non-finite samples and densities below the floor.
FieldPair apply_initial_data(const Grid& g, const std::function<double(double)>& rho0,
                             const std::function<double(double)>& m0,
                             double floor_shift, double rho_floor);

// min(cfl*dx/Lambda_max, 0.4*dx^2/max(eps, tiny)) where Lambda_max is the
// largest absolute characteristic speed over the field.
double stable_dt(const ModelConfig& cfg, const FieldPair& f, const SolverParams& p,
                 const Grid& g);

// One conservative flux + diffusion update over dt.  If any density lands
// below the floor the update is redone in 2, 4, ... equal substeps (up to 20
// halvings) before giving up.  Returns the number of halvings used.
int hyperbolic_diffusive_substep(const ModelConfig& cfg, FieldPair& f,
                                 const SolverParams& p, const Grid& g, double dt);

// Exact relaxation update m <- h(rho) + (m - h(rho)) * exp(-dt/tau).
void relaxation_substep(const ModelConfig& cfg, FieldPair& f, double dt, double tau);

struct StepStats {
  long steps = 0;
  long rejections = 0; // substep halvings triggered by the density floor
  double dt_min = std::numeric_limits<double>::infinity();
  double dt_max = 0.0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  // region tracking (only when a region is supplied)
  bool region_tracked = false;
  bool initial_in_region = true;
  double min_slack = std::numeric_limits<double>::infinity();
  double w_min = std::numeric_limits<double>::infinity();
  double w_max = -std::numeric_limits<double>::infinity();
  double z_min = std::numeric_limits<double>::infinity();
  double z_max = -std::numeric_limits<double>::infinity();
  // windowed dissipation tallies
  double d_visc = 0.0;
  double d_relax = 0.0;

  std::string to_text() const;
};

struct AdvanceOptions {
  const Region* region = nullptr;         // track slack/W/Z ranges
  std::span<const double> weight{};       // dissipation window, empty = all ones
  double max_dt = std::numeric_limits<double>::infinity();
};

// Strang-split march to t_target (half relaxation, flux + diffusion, half
// relaxation per step), accumulating statistics and trapezoidal dissipation
// tallies over accepted states.
StepStats advance(const ModelConfig& cfg, FieldPair& f, const SolverParams& p,
                  const Grid& g, double t_target, const AdvanceOptions& opt = {});

// Parameters of the zoomed form R(y, s) = rho(tau*y, tau*s): viscosity eps/tau,
// unit relaxation time, horizon t_final/tau.  tau = 1 is the identity.
SolverParams rescaled_mode(const SolverParams& p);
Grid rescaled_grid(const Grid& g, double tau);

// Snapshot rows x,rho,m,W,Z,gap with gap = m - h(rho), 17 significant digits.
void write_snapshot_csv(const std::string& path, const ModelConfig& cfg,
                        const Grid& g, const FieldPair& f);

} // namespace trelax
