#pragma once

#include <span>
#include <vector>

#include "trelax/grid.hpp"
#include "trelax/model.hpp"
#include "trelax/region.hpp"

// Quantitative estimates layered on top of solver output: the quadratic
// energy form and its coercivity constant, windowed dissipation tallies,
// gap and distance norms, and the log-log slope fit used by parameter sweeps.

namespace trelax {

// Q(rho, m) = m^2/2 - h(rho)*m + c_q*rho^2/2, built so that the Hessian
// (with Q_mm = 1, Q_rm = -h'(rho), Q_rr = -h''(rho)*m + c_q) dominates c*I
// over a state box.
struct EnergyForm {
  double c_q = 0.0;
  double c = 0.0; // coercivity margin the constant was chosen for
};

// Smallest c_q (to 1e-6) with (Q_rr - c)(1 - c) >= Q_rm^2 everywhere on the
// box, located by a refined grid scan.  c_target must lie in [0, 1) since
// Q_mm is fixed at 1.
EnergyForm choose_energy_constant(const ModelConfig& cfg, const StateBox& box,
                                  double c_target);
// Same over cfg.state_box.
EnergyForm choose_energy_constant(const ModelConfig& cfg, double c_target = 0.5);

// Smallest eigenvalue of the Hessian of Q at one state.
double coercivity_margin(const ModelConfig& cfg, const EnergyForm& e, const State& s);

// Cutoff weights standing in for a compactly supported test function:
// 1 on the middle half of the domain, cos^2 taper, 0 beyond three quarters
// of the half-width.
std::vector<double> window_weight(const Grid& g);

struct DissipationRates {
  double visc = 0.0;  // eps * sum w_i ((rho_x)_i^2 + (m_x)_i^2) dx
  double relax = 0.0; // (1/tau) * sum w_i (m_i - h(rho_i))^2 dx
};

struct DissipationTally {
  double d_visc = 0.0;
  double d_relax = 0.0;
};

// Instantaneous rates with central differences on the diffusion stencil.
DissipationRates dissipation_rates(const ModelConfig& cfg, std::span<const double> rho,
                                   std::span<const double> m, double dx, Bc bc,
                                   double epsilon, double tau,
                                   std::span<const double> weight = {});

// Trapezoidal time integration of two rate samples dt apart; additive over
// adjoining windows by construction.
void accumulate_dissipation(DissipationTally& t, const DissipationRates& prev,
                            const DissipationRates& cur, double dt);

struct GapNorms {
  double l2 = 0.0;   // sqrt(sum (m - h(rho))^2 dx)
  double linf = 0.0;
};

GapNorms equilibrium_gap(const ModelConfig& cfg, std::span<const double> rho,
                         std::span<const double> m, double dx);

// sum |a - b| * dx; arrays must have equal length.
double l1_distance(std::span<const double> a, std::span<const double> b, double dx);

// Minimum over cells of min(c1 - W, Z - c2, rho); >= -tol certifies that the
// run stayed inside the region up to tol.
double sigma_violation(const ModelConfig& cfg, const Region& r,
                       std::span<const double> rho, std::span<const double> m);

// Least-squares slope of log(y) against log(x); needs >= 2 points, all
// positive, at least two distinct x.
double fit_loglog_slope(std::span<const double> x, std::span<const double> y);

} // namespace trelax
