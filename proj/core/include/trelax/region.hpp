#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trelax/model.hpp"

// Invariant region {W <= c1, Z >= c2, rho >= 0} in the (rho, m) plane and the
// sampled geometric checks behind it: outward-pointing boundary functionals,
// inward-pointing relaxation source, and the containment/subcharacteristic
// audit used by the check command.

namespace trelax {

struct Region {
  double c1 = 2.0;
  double c2 = 0.7;

  void validate() const; // requires 0 < c2 < c1
};

struct ContainsResult {
  bool inside = false;
  // signed slacks (c1 - W, Z - c2, rho); positive means strictly interior.
  double slack_w = 0.0;
  double slack_z = 0.0;
  double slack_rho = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct HypothesisReport {
  State corner_state{};
  double hull_lo = 0.0, hull_hi = 0.0;

  bool equilibrium_on_hull = false;       // h(rho) inside the region on the hull
  std::vector<Interval> hull_violations;

  bool subchar_on_hull = false;           // strict enclosure of h' on the hull
  std::vector<Interval> subchar_violations;

  bool equilibrium_to_corner = false;     // containment extended to [0, corner rho)
  std::vector<Interval> corner_violations;

  bool initial_checked = false;
  bool initial_in_region = false;
  double initial_min_slack = 0.0;

  bool hull_level_pass() const { return equilibrium_on_hull && subchar_on_hull; }
  std::string to_text() const; // "key: value" lines
};

// Membership test.  The boolean uses the multiplied-through inequalities
// (m <= c1*rho, m >= c2*rho + rho*P(rho)), which stay meaningful at vacuum;
// the slack components divide by rho and are clamped near vacuum.
ContainsResult contains(const ModelConfig& cfg, const Region& r, const State& s);

// Intersection of the two boundary curves: rho = P^-1(c1 - c2), m = c1*rho.
State corner(const ModelConfig& cfg, const Region& r);

// (U - Y) . grad(xi_curve)(U) for U on the given boundary curve (1 or 2) and
// any probe state Y; xi_1 = W, xi_2 = -Z.  Positive when Y is interior.
double boundary_pair_term(const ModelConfig& cfg, const Region& r, int curve,
                          const State& u, const State& y);

// Minimum of boundary_pair_term over seeded random pairs (U on each curve,
// Y strictly inside); n_boundary * n_interior pairs per curve.
double boundary_condition_check(const ModelConfig& cfg, const Region& r,
                                int n_boundary, int n_interior, std::uint64_t seed);

// Inward component of the relaxation source (0, h(rho) - m) along the inward
// unit normal at a state U on the given boundary curve.
double source_inward_margin(const ModelConfig& cfg, const Region& r, int curve,
                            const State& u);

// Minimum source margin over states sampled on both curves for rho in the
// given hull (clipped to the corner density).
double source_inward_check(const ModelConfig& cfg, const Region& r,
                           double hull_lo, double hull_hi, int n);

// Containment and subcharacteristic scan; optional initial data (cell arrays)
// are checked for membership as well.
HypothesisReport audit_hypotheses(const ModelConfig& cfg, const Region& r,
                                  double hull_lo, double hull_hi,
                                  std::span<const double> rho0 = {},
                                  std::span<const double> m0 = {},
                                  int samples = 2001);

} // namespace trelax
