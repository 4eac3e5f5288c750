#pragma once

#include <functional>
#include <vector>

#include "trelax/grid.hpp"
#include "trelax/model.hpp"

// Scalar conservation law rho_t + g(rho)_x = 0 with the reduced flux
// g(rho) = h(rho) - rho*P(rho), i.e. the density flux of the system evaluated
// on the equilibrium curve m = h(rho).  Provides the exact-Riemann-solver
// Godunov scheme, the closed-form Riemann solution for concave g, and the
// entropy-inequality residual used to certify computed solutions.

namespace trelax {

struct ScalarFlux {
  ModelConfig cfg;
  double rho_lo = 0.0;
  double rho_hi = 1.0;
  std::vector<double> sonic; // roots of g' inside (rho_lo, rho_hi)
  bool concave = false;      // g'' < 0 on the whole interval
};

// Precomputes sonic points and the concavity flag on [rho_lo, rho_hi].
ScalarFlux make_scalar_flux(const ModelConfig& cfg, double rho_lo, double rho_hi);

double eval_g(const ScalarFlux& f, double rho);
double eval_dg(const ScalarFlux& f, double rho);

// Exact Riemann flux: min of g over [l, r] when l <= r, max over [r, l]
// otherwise.  Both arguments must lie in the precomputed interval.
double godunov_flux(const ScalarFlux& f, double l, double r);

struct ScalarField {
  std::vector<double> rho;
  double t = 0.0;
};

// One forward-Euler Godunov step; requires dt * max|g'| <= dx.
void step_scalar(const ScalarFlux& f, ScalarField& u, double dt, double dx, Bc bc);

// Time history of a scalar run (used by the entropy residual).
struct ScalarHistory {
  double x_left = 0.0;
  double dx = 0.0;
  std::vector<double> times;
  std::vector<std::vector<double>> fields; // fields[k] at times[k]
};

// Advance to t_target with the stable step cfl*dx/max|g'|; optionally records
// every accepted state into hist.
void advance_scalar(const ScalarFlux& f, ScalarField& u, const Grid& g,
                    double t_target, double cfl = 0.9, ScalarHistory* hist = nullptr);

// Self-similar solution of the Riemann problem at xi = x/t.  Concave g only:
// an increasing jump travels as a shock at the chord speed, a decreasing jump
// opens into a rarefaction inverted through g'.
double exact_riemann_scalar(const ScalarFlux& f, double rho_l, double rho_r, double xi);

// Smooth compactly supported space-time test bump cos^2 in both directions,
// nonnegative, with analytic derivatives.
struct SpaceTimeBump {
  double x0, x1; // support in space
  double t0, t1; // support in time
  double amp = 1.0;

  double value(double x, double t) const;
  double dt(double x, double t) const;
  double dx(double x, double t) const;
  double sup() const { return amp; }
};

// Midpoint-quadrature value of
//   -integral( |rho - k| phi_t + sign(rho - k) (g(rho) - g(k)) phi_x )
// over the recorded history; <= 0 (up to quadrature noise) for entropy
// solutions and > 0 for expansion shocks.
double kruzkov_residual(const ScalarFlux& f, const ScalarHistory& hist, double k,
                        const SpaceTimeBump& phi);

} // namespace trelax
