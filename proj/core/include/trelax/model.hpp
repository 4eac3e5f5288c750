#pragma once

#include <array>
#include <optional>

#include "trelax/spline.hpp"

// Second-order traffic model in conserved variables (rho, m):
//
//   rho_t + (rho * phi)_x = 0
//   m_t   + (m * phi)_x   = (h(rho) - m) / tau
//
// with velocity phi(rho, m) = m/rho - P(rho), pressure P(rho) = kappa*rho^gamma
// and equilibrium momentum h(rho) = rho*(a - b*rho) unless a tabulated law is
// installed.  This header holds the pointwise algebra shared by every solver:
// flux, Jacobian, eigenstructure, Riemann invariants and their inverse, the
// genuine-nonlinearity indicators, and the subcharacteristic margin.

namespace trelax {

struct State {
  double rho = 0.0;
  double m = 0.0;
};

// Densities below this count as vacuum for every operation that divides by
// rho; mirrors the initial-data shift that keeps profiles off rho = 0.
inline constexpr double kRhoFloor = 1e-8;

// Rectangle of states over which sampled checks and constants are computed.
struct StateBox {
  double rho_min = 0.0;
  double rho_max = 1.0;
  double m_min = 0.0;
  double m_max = 2.0;
};

struct ModelConfig {
  double gamma = 1.0; // pressure exponent, > 0
  double kappa = 1.0; // pressure scale, > 0
  double a = 2.0;     // h(rho) = rho*(a - b*rho)
  double b = 1.5;
  StateBox state_box{};
  std::optional<CubicSpline> h_table; // overrides the quadratic law when set

  void validate() const; // throws std::invalid_argument
};

struct PressureDerivs {
  double p, dp, ddp;
};

struct EquilibriumDerivs {
  double h, dh, ddh;
};

struct EigenData {
  double lambda1, lambda2;           // lambda1 = v - rho*P', lambda2 = v
  std::array<double, 2> r1, r2;      // right eigenvectors, first component 1
};

struct InvariantPair {
  double w; // m/rho, constant along the first field
  double z; // m/rho - P(rho), constant along the second field (equals lambda2)
};

struct NonlinearityPair {
  double field1; // grad(lambda1) . r1 = -(2P' + rho*P'')
  double field2; // grad(lambda2) . r2, identically 0
};

struct SubcharReport {
  double lambda1; // at (rho, h(rho))
  double dh;      // h'(rho)
  double lambda2; // at (rho, h(rho))
  double margin;  // min(dh - lambda1, lambda2 - dh)
};

// Pressure law and its closed-form inverse.  rho < 0 is a domain error.
PressureDerivs pressure(const ModelConfig& cfg, double rho);
double pressure_inverse(const ModelConfig& cfg, double p);

// Equilibrium momentum h with two derivatives (quadratic law or spline).
EquilibriumDerivs equilibrium_momentum(const ModelConfig& cfg, double rho);

// Flux (rho*phi, m*phi); the first component reduces to m - rho*P(rho).
// States too close to vacuum are rejected (division by rho).
std::array<double, 2> flux(const ModelConfig& cfg, const State& s);
std::array<std::array<double, 2>, 2> flux_jacobian(const ModelConfig& cfg, const State& s);

EigenData eigensystem(const ModelConfig& cfg, const State& s);
InvariantPair riemann_invariants(const ModelConfig& cfg, const State& s);

// Inverse of the invariant map: rho = P^-1(w - z), m = w*rho.  Requires w > z.
State invert_invariants(const ModelConfig& cfg, const InvariantPair& wz);

NonlinearityPair nonlinearity_indicators(const ModelConfig& cfg, const State& s);

// Enclosure of h' between the characteristic speeds on the equilibrium curve.
SubcharReport subcharacteristic_margin(const ModelConfig& cfg, double rho);

// Central-difference directional derivative of lambda2 along the (normalized)
// second eigenvector; a numerical witness that the second field is linearly
// degenerate.
double fd_lambda2_along_r2(const ModelConfig& cfg, const State& s, double step = 1e-6);

} // namespace trelax
