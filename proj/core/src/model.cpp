#include "trelax/model.hpp"

#include <cmath>
#include <stdexcept>

namespace trelax {

namespace {

void require_away_from_vacuum(double rho) {
  if (!(rho >= kRhoFloor))
    throw std::domain_error("state too close to vacuum (rho below 1e-8), velocity undefined");
}

} // namespace

void ModelConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw std::invalid_argument("model: gamma must be positive");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("model: kappa must be positive");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw std::invalid_argument("model: equilibrium coefficients must be finite");
  if (!(state_box.rho_min >= 0.0) || !(state_box.rho_max > state_box.rho_min) ||
      !(state_box.m_max > state_box.m_min))
    throw std::invalid_argument("model: state box is degenerate");
}

PressureDerivs pressure(const ModelConfig& cfg, double rho) {
  if (!(rho >= 0.0))
    throw std::domain_error("pressure: rho must be nonnegative");
  if (cfg.gamma == 1.0)
    return {cfg.kappa * rho, cfg.kappa, 0.0};
  const double p = cfg.kappa * std::pow(rho, cfg.gamma);
  const double dp = cfg.kappa * cfg.gamma * std::pow(rho, cfg.gamma - 1.0);
  const double c2 = cfg.kappa * cfg.gamma * (cfg.gamma - 1.0);
  const double ddp = (c2 == 0.0) ? 0.0 : c2 * std::pow(rho, cfg.gamma - 2.0);
  return {p, dp, ddp};
}

double pressure_inverse(const ModelConfig& cfg, double p) {
  if (!(p >= 0.0))
    throw std::domain_error("pressure_inverse: pressure must be nonnegative");
  if (cfg.gamma == 1.0) return p / cfg.kappa;
  return std::pow(p / cfg.kappa, 1.0 / cfg.gamma);
}

EquilibriumDerivs equilibrium_momentum(const ModelConfig& cfg, double rho) {
  if (cfg.h_table)
    return {cfg.h_table->value(rho), cfg.h_table->deriv(rho), cfg.h_table->deriv2(rho)};
  return {rho * (cfg.a - cfg.b * rho), cfg.a - 2.0 * cfg.b * rho, -2.0 * cfg.b};
}

std::array<double, 2> flux(const ModelConfig& cfg, const State& s) {
  require_away_from_vacuum(s.rho);
  const double p = pressure(cfg, s.rho).p;
  const double phi = s.m / s.rho - p;
  return {s.m - s.rho * p, s.m * phi};
}

std::array<std::array<double, 2>, 2> flux_jacobian(const ModelConfig& cfg, const State& s) {
  require_away_from_vacuum(s.rho);
  const auto pr = pressure(cfg, s.rho);
  const double v = s.m / s.rho;
  return {{{-pr.p - s.rho * pr.dp, 1.0},
           {-v * v - s.m * pr.dp, 2.0 * v - pr.p}}};
}

EigenData eigensystem(const ModelConfig& cfg, const State& s) {
  require_away_from_vacuum(s.rho);
  const auto pr = pressure(cfg, s.rho);
  const double w = s.m / s.rho;
  const double v = w - pr.p;
  EigenData e;
  e.lambda1 = v - s.rho * pr.dp;
  e.lambda2 = v;
  e.r1 = {1.0, w};
  e.r2 = {1.0, w + s.rho * pr.dp};
  return e;
}

InvariantPair riemann_invariants(const ModelConfig& cfg, const State& s) {
  require_away_from_vacuum(s.rho);
  const double w = s.m / s.rho;
  return {w, w - pressure(cfg, s.rho).p};
}

State invert_invariants(const ModelConfig& cfg, const InvariantPair& wz) {
  if (!(wz.w > wz.z))
    throw std::domain_error("invert_invariants: requires w > z (positive pressure)");
  const double rho = pressure_inverse(cfg, wz.w - wz.z);
  return {rho, wz.w * rho};
}

NonlinearityPair nonlinearity_indicators(const ModelConfig& cfg, const State& s) {
  require_away_from_vacuum(s.rho);
  const auto pr = pressure(cfg, s.rho);
  return {-(2.0 * pr.dp + s.rho * pr.ddp), 0.0};
}

SubcharReport subcharacteristic_margin(const ModelConfig& cfg, double rho) {
  if (!(rho >= 0.0))
    throw std::domain_error("subcharacteristic_margin: rho must be nonnegative");
  const auto pr = pressure(cfg, rho);
  const auto eq = equilibrium_momentum(cfg, rho);
  // equilibrium velocity h/rho - P, continued by h'(0) - P(0) at vacuum
  const double ve = (rho > 0.0) ? eq.h / rho - pr.p : eq.dh - pr.p;
  SubcharReport r;
  r.lambda1 = ve - rho * pr.dp;
  r.lambda2 = ve;
  r.dh = eq.dh;
  r.margin = std::min(r.dh - r.lambda1, r.lambda2 - r.dh);
  return r;
}

double fd_lambda2_along_r2(const ModelConfig& cfg, const State& s, double step) {
  const EigenData e = eigensystem(cfg, s);
  const double n = std::hypot(e.r2[0], e.r2[1]);
  const double dr = e.r2[0] / n, dm = e.r2[1] / n;
  const State sp{s.rho + step * dr, s.m + step * dm};
  const State sm{s.rho - step * dr, s.m - step * dm};
  return (eigensystem(cfg, sp).lambda2 - eigensystem(cfg, sm).lambda2) / (2.0 * step);
}

} // namespace trelax
