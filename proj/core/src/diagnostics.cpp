#include "trelax/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "trelax/region.hpp"

namespace trelax {

namespace {

int neighbor(int i, int n, Bc bc) {
  if (bc == Bc::periodic) {
    i %= n;
    return i < 0 ? i + n : i;
  }
  return std::clamp(i, 0, n - 1);
}

// c_q needed at a single box point so that (Q_rr - c)(1 - c) >= Q_rm^2.
double required_cq(const ModelConfig& cfg, double rho, double m, double c) {
  const EquilibriumDerivs eq = equilibrium_momentum(cfg, rho);
  return eq.dh * eq.dh / (1.0 - c) + eq.ddh * m + c;
}

} // namespace

EnergyForm choose_energy_constant(const ModelConfig& cfg, const StateBox& box,
                                  double c_target) {
  if (!(c_target >= 0.0) || !(c_target < 1.0)) {
    throw std::invalid_argument("c_target must lie in [0, 1) since Q_mm = 1");
  }
  if (!std::isfinite(box.rho_min) || !std::isfinite(box.rho_max) ||
      !std::isfinite(box.m_min) || !std::isfinite(box.m_max) ||
      !(box.rho_max >= box.rho_min) || !(box.m_max >= box.m_min)) {
    throw std::invalid_argument("state box must be bounded");
  }

  // The requirement is linear in m, so only the m endpoints matter; scan rho
  // on a grid and refine around the worst point.
  const int kPoints = 4096;
  double lo = box.rho_min, hi = box.rho_max;
  double best = -std::numeric_limits<double>::infinity();
  double best_rho = lo;
  for (int pass = 0; pass < 3; ++pass) {
    const double step = (hi - lo) / kPoints;
    for (int i = 0; i <= kPoints; ++i) {
      const double rho = (i == kPoints) ? hi : lo + step * i;
      const double v = std::max(required_cq(cfg, rho, box.m_min, c_target),
                                required_cq(cfg, rho, box.m_max, c_target));
      if (v > best) {
        best = v;
        best_rho = rho;
      }
    }
    if (step == 0.0) break;
    lo = std::max(box.rho_min, best_rho - 2.0 * step);
    hi = std::min(box.rho_max, best_rho + 2.0 * step);
  }
  return {best, c_target};
}

EnergyForm choose_energy_constant(const ModelConfig& cfg, double c_target) {
  return choose_energy_constant(cfg, cfg.state_box, c_target);
}

double coercivity_margin(const ModelConfig& cfg, const EnergyForm& e, const State& s) {
  const EquilibriumDerivs eq = equilibrium_momentum(cfg, s.rho);
  const double q_rr = e.c_q - eq.ddh * s.m;
  const double q_rm = -eq.dh;
  // smallest eigenvalue of [[q_rr, q_rm], [q_rm, 1]]
  const double tr = q_rr + 1.0;
  const double d = std::sqrt((q_rr - 1.0) * (q_rr - 1.0) + 4.0 * q_rm * q_rm);
  return 0.5 * (tr - d);
}

std::vector<double> window_weight(const Grid& g) {
  g.validate();
  const double xc = 0.5 * (g.x_left + g.x_right);
  const double half = 0.5 * (g.x_right - g.x_left);
  std::vector<double> w(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double u = std::abs(g.center(i) - xc) / half;
    if (u <= 0.5) {
      w[i] = 1.0;
    } else if (u >= 0.75) {
      w[i] = 0.0;
    } else {
      const double s = std::cos(2.0 * std::numbers::pi * (u - 0.5));
      w[i] = s * s;
    }
  }
  return w;
}

DissipationRates dissipation_rates(const ModelConfig& cfg, std::span<const double> rho,
                                   std::span<const double> m, double dx, Bc bc,
                                   double epsilon, double tau,
                                   std::span<const double> weight) {
  const int n = static_cast<int>(rho.size());
  if (m.size() != rho.size()) throw std::invalid_argument("field size mismatch");
  if (!weight.empty() && weight.size() != rho.size()) {
    throw std::invalid_argument("weight size mismatch");
  }
  if (!(dx > 0.0) || !(tau > 0.0)) {
    throw std::invalid_argument("dx and tau must be positive");
  }
  DissipationRates out;
  for (int i = 0; i < n; ++i) {
    const int im = neighbor(i - 1, n, bc);
    const int ip = neighbor(i + 1, n, bc);
    const double gr = (rho[ip] - rho[im]) / (2.0 * dx);
    const double gm = (m[ip] - m[im]) / (2.0 * dx);
    const double gap = m[i] - equilibrium_momentum(cfg, rho[i]).h;
    const double wi = weight.empty() ? 1.0 : weight[i];
    out.visc += wi * (gr * gr + gm * gm);
    out.relax += wi * gap * gap;
  }
  out.visc *= epsilon * dx;
  out.relax *= dx / tau;
  return out;
}

void accumulate_dissipation(DissipationTally& t, const DissipationRates& prev,
                            const DissipationRates& cur, double dt) {
  t.d_visc += 0.5 * (prev.visc + cur.visc) * dt;
  t.d_relax += 0.5 * (prev.relax + cur.relax) * dt;
}

GapNorms equilibrium_gap(const ModelConfig& cfg, std::span<const double> rho,
                         std::span<const double> m, double dx) {
  if (m.size() != rho.size()) throw std::invalid_argument("field size mismatch");
  GapNorms out;
  double sq = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double gap = std::abs(m[i] - equilibrium_momentum(cfg, rho[i]).h);
    sq += gap * gap;
    out.linf = std::max(out.linf, gap);
  }
  out.l2 = std::sqrt(sq * dx);
  return out;
}

double l1_distance(std::span<const double> a, std::span<const double> b, double dx) {
  if (a.size() != b.size()) throw std::invalid_argument("array length mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
  return s * dx;
}

double sigma_violation(const ModelConfig& cfg, const Region& r,
                       std::span<const double> rho, std::span<const double> m) {
  if (m.size() != rho.size()) throw std::invalid_argument("field size mismatch");
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const ContainsResult c = contains(cfg, r, {rho[i], m[i]});
    worst = std::min({worst, c.slack_w, c.slack_z, c.slack_rho});
  }
  return worst;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit needs two or more paired points");
  }
  const int n = static_cast<int>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
      throw std::invalid_argument("slope fit needs positive values");
    }
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (!(denom > 0.0)) throw std::invalid_argument("slope fit needs distinct x values");
  return (n * sxy - sx * sy) / denom;
}

} // namespace trelax
