#include "trelax/region.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

namespace trelax {

namespace {

// State on boundary curve 1 (W = c1) or curve 2 (Z = c2) at density rho.
State curve_state(const ModelConfig& cfg, const Region& r, int curve, double rho) {
  if (curve == 1) return {rho, r.c1 * rho};
  return {rho, r.c2 * rho + rho * pressure(cfg, rho).p};
}

bool member(const ModelConfig& cfg, const Region& r, double rho, double m) {
  if (!(rho >= 0.0)) return false;
  const double p = pressure(cfg, rho).p;
  return m <= r.c1 * rho && m >= r.c2 * rho + rho * p;
}

std::string interval_text(const std::vector<Interval>& v) {
  if (v.empty()) return "none";
  std::string out;
  char buf[80];
  for (const auto& iv : v) {
    std::snprintf(buf, sizeof buf, "[%.6g, %.6g)", iv.lo, iv.hi);
    if (!out.empty()) out += " ";
    out += buf;
  }
  return out;
}

// Collect maximal runs of failing samples as half-open intervals.
template <class Pred>
std::vector<Interval> scan_violations(double lo, double hi, int n, Pred fails) {
  std::vector<Interval> out;
  const double step = (hi - lo) / n;
  bool open = false;
  double start = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = lo + step * i;
    if (fails(x)) {
      if (!open) {
        open = true;
        start = x;
      }
    } else if (open) {
      out.push_back({start, x});
      open = false;
    }
  }
  if (open) out.push_back({start, hi});
  return out;
}

} // namespace

void Region::validate() const {
  if (!(c2 > 0.0) || !(c1 > c2))
    throw std::invalid_argument("region: constants must satisfy 0 < c2 < c1");
}

ContainsResult contains(const ModelConfig& cfg, const Region& r, const State& s) {
  ContainsResult res;
  res.inside = member(cfg, r, s.rho, s.m);
  const double rho_safe = std::max(s.rho, 1e-12);
  const double p = pressure(cfg, std::max(s.rho, 0.0)).p;
  const double w = s.m / rho_safe;
  res.slack_w = r.c1 - w;
  res.slack_z = (w - p) - r.c2;
  res.slack_rho = s.rho;
  return res;
}

State corner(const ModelConfig& cfg, const Region& r) {
  r.validate();
  const double rho1 = pressure_inverse(cfg, r.c1 - r.c2);
  return {rho1, r.c1 * rho1};
}

double boundary_pair_term(const ModelConfig& cfg, const Region& r, int curve,
                          const State& u, const State& y) {
  if (curve != 1 && curve != 2)
    throw std::invalid_argument("boundary_pair_term: curve must be 1 or 2");
  if (!(u.rho > 0.0))
    throw std::domain_error("boundary_pair_term: boundary state at vacuum");
  (void)r;
  const double dp = pressure(cfg, u.rho).dp;
  // grad W = (-m/rho^2, 1/rho); grad Z = grad W - (P', 0); xi_2 = -Z.
  double gr = -u.m / (u.rho * u.rho);
  double gm = 1.0 / u.rho;
  if (curve == 2) {
    gr = -(gr - dp);
    gm = -gm;
  }
  return (u.rho - y.rho) * gr + (u.m - y.m) * gm;
}

double boundary_condition_check(const ModelConfig& cfg, const Region& r,
                                int n_boundary, int n_interior, std::uint64_t seed) {
  r.validate();
  if (n_boundary <= 0 || n_interior <= 0)
    throw std::invalid_argument("boundary_condition_check: sample counts must be positive");
  const double rho1 = corner(cfg, r).rho;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> rho_b(0.01 * rho1, rho1);
  std::uniform_real_distribution<double> rho_i(0.01 * rho1, 0.99 * rho1);
  std::uniform_real_distribution<double> frac(0.05, 0.95);

  double min_dot = std::numeric_limits<double>::infinity();
  for (int curve = 1; curve <= 2; ++curve) {
    for (int ib = 0; ib < n_boundary; ++ib) {
      const State u = curve_state(cfg, r, curve, rho_b(gen));
      for (int iy = 0; iy < n_interior; ++iy) {
        const double ry = rho_i(gen);
        const double m_lo = curve_state(cfg, r, 2, ry).m;
        const double m_hi = curve_state(cfg, r, 1, ry).m;
        const State y{ry, m_lo + frac(gen) * (m_hi - m_lo)};
        min_dot = std::min(min_dot, boundary_pair_term(cfg, r, curve, u, y));
      }
    }
  }
  return min_dot;
}

double source_inward_margin(const ModelConfig& cfg, const Region& r, int curve,
                            const State& u) {
  if (curve != 1 && curve != 2)
    throw std::invalid_argument("source_inward_margin: curve must be 1 or 2");
  if (!(u.rho > 0.0))
    throw std::domain_error("source_inward_margin: boundary state at vacuum");
  (void)r;
  const double dp = pressure(cfg, u.rho).dp;
  const double h = equilibrium_momentum(cfg, u.rho).h;
  // inward unit normal: -grad W / |grad W| on curve 1, +grad Z / |grad Z| on 2
  double gr = -u.m / (u.rho * u.rho);
  double gm = 1.0 / u.rho;
  double sign = -1.0;
  if (curve == 2) {
    gr -= dp;
    sign = 1.0;
  }
  const double norm = std::hypot(gr, gm);
  return sign * (h - u.m) * gm / norm;
}

double source_inward_check(const ModelConfig& cfg, const Region& r,
                           double hull_lo, double hull_hi, int n) {
  r.validate();
  if (n <= 1) throw std::invalid_argument("source_inward_check: need n > 1");
  const double rho1 = corner(cfg, r).rho;
  const double lo = std::max(hull_lo, 1e-6 * rho1);
  const double hi = std::min(hull_hi, rho1);
  if (!(hi > lo))
    throw std::invalid_argument("source_inward_check: empty density interval");
  double min_margin = std::numeric_limits<double>::infinity();
  for (int curve = 1; curve <= 2; ++curve) {
    for (int i = 0; i < n; ++i) {
      const double rho = lo + (hi - lo) * i / (n - 1);
      const State u = curve_state(cfg, r, curve, rho);
      min_margin = std::min(min_margin, source_inward_margin(cfg, r, curve, u));
    }
  }
  return min_margin;
}

HypothesisReport audit_hypotheses(const ModelConfig& cfg, const Region& r,
                                  double hull_lo, double hull_hi,
                                  std::span<const double> rho0,
                                  std::span<const double> m0, int samples) {
  r.validate();
  if (!(hull_hi > hull_lo) || !(hull_lo >= 0.0))
    throw std::invalid_argument("audit_hypotheses: bad data hull");
  if (samples < 16) throw std::invalid_argument("audit_hypotheses: too few samples");

  HypothesisReport rep;
  rep.corner_state = corner(cfg, r);
  rep.hull_lo = hull_lo;
  rep.hull_hi = hull_hi;

  const auto eq_outside = [&](double rho) {
    const double h = equilibrium_momentum(cfg, rho).h;
    return !member(cfg, r, rho, h);
  };
  const auto subchar_fails = [&](double rho) {
    return !(subcharacteristic_margin(cfg, rho).margin > 0.0);
  };

  rep.hull_violations = scan_violations(hull_lo, hull_hi, samples, eq_outside);
  rep.equilibrium_on_hull = rep.hull_violations.empty();

  const double sub_lo = std::max(hull_lo, 1e-9);
  rep.subchar_violations = scan_violations(sub_lo, hull_hi, samples, subchar_fails);
  rep.subchar_on_hull = rep.subchar_violations.empty();

  rep.corner_violations = scan_violations(0.0, rep.corner_state.rho, samples, eq_outside);
  rep.equilibrium_to_corner = rep.corner_violations.empty();

  if (!rho0.empty()) {
    if (rho0.size() != m0.size())
      throw std::invalid_argument("audit_hypotheses: initial data arrays differ in length");
    rep.initial_checked = true;
    rep.initial_in_region = true;
    rep.initial_min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rho0.size(); ++i) {
      const auto c = contains(cfg, r, {rho0[i], m0[i]});
      rep.initial_in_region = rep.initial_in_region && c.inside;
      const double slack = std::min({c.slack_w, c.slack_z, c.slack_rho});
      rep.initial_min_slack = std::min(rep.initial_min_slack, slack);
    }
  }
  return rep;
}

std::string HypothesisReport::to_text() const {
  char buf[160];
  std::string out;
  const auto line = [&](const char* fmt, auto... args) {
    std::snprintf(buf, sizeof buf, fmt, args...);
    out += buf;
    out += '\n';
  };
  line("corner_rho: %.17g", corner_state.rho);
  line("corner_m: %.17g", corner_state.m);
  line("data_hull: [%.17g, %.17g]", hull_lo, hull_hi);
  line("equilibrium_on_hull: %s", equilibrium_on_hull ? "pass" : "fail");
  line("equilibrium_on_hull_violations: %s", interval_text(hull_violations).c_str());
  line("subcharacteristic_on_hull: %s", subchar_on_hull ? "pass" : "fail");
  line("subcharacteristic_violations: %s", interval_text(subchar_violations).c_str());
  line("equilibrium_to_corner: %s", equilibrium_to_corner ? "pass" : "fail");
  line("equilibrium_to_corner_violations: %s", interval_text(corner_violations).c_str());
  if (initial_checked) {
    line("initial_data: %s", initial_in_region ? "pass" : "fail");
    line("initial_min_slack: %.17g", initial_min_slack);
  } else {
    line("initial_data: %s", "unchecked");
  }
  return out;
}

} // namespace trelax
