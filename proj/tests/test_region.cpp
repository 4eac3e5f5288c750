#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "trelax/model.hpp"
#include "trelax/region.hpp"

using namespace trelax;

TEST_CASE("membership and slacks") {
  ModelConfig cfg;
  Region r;

  // equilibrium state at rho = 0.4: W = 1.4, Z = 1.0
  auto c = contains(cfg, r, {0.4, 0.56});
  CHECK(c.inside);
  CHECK(c.slack_w == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(c.slack_z == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(c.slack_rho == doctest::Approx(0.4).epsilon(1e-15));

  // W too large
  CHECK_FALSE(contains(cfg, r, {0.4, 0.9}).inside);
  // Z too small
  CHECK_FALSE(contains(cfg, r, {0.5, 0.5}).inside);
  // the origin sits on the boundary of all three constraints
  CHECK(contains(cfg, r, {0.0, 0.0}).inside);
}

TEST_CASE("corner state") {
  ModelConfig cfg;
  Region r;
  auto s = corner(cfg, r);
  CHECK(s.rho == doctest::Approx(1.3).epsilon(1e-14)); // P^-1(2 - 0.7)
  CHECK(s.m == doctest::Approx(2.6).epsilon(1e-14));   // c1 * rho

  auto wz = riemann_invariants(cfg, s);
  CHECK(wz.w == doctest::Approx(r.c1).epsilon(1e-14));
  CHECK(wz.z == doctest::Approx(r.c2).epsilon(1e-13));
}

TEST_CASE("boundary pair terms are positive for interior probes") {
  ModelConfig cfg;
  Region r;

  // U on curve 1 (W = c1): rho = 0.5, m = c1*rho = 1.0
  State u1{0.5, 1.0};
  // Y strictly inside
  State y{0.4, 0.56};
  CHECK(boundary_pair_term(cfg, r, 1, u1, y) > 0.0);

  // U on curve 2 (Z = c2): m = rho*(c2 + P(rho))
  State u2{0.5, 0.5 * (0.7 + 0.5)};
  CHECK(boundary_pair_term(cfg, r, 2, u2, y) > 0.0);

  CHECK_THROWS_AS(boundary_pair_term(cfg, r, 3, u1, y), std::invalid_argument);
}

TEST_CASE("sampled geometric condition is strictly positive") {
  ModelConfig cfg;
  Region r;
  double worst = boundary_condition_check(cfg, r, 30, 30, 2024);
  CHECK(worst > 0.0);
  // deterministic for a fixed seed
  CHECK(boundary_condition_check(cfg, r, 30, 30, 2024) == worst);
}

TEST_CASE("relaxation source points inward on the usable hull") {
  ModelConfig cfg;
  Region r;

  // on curve 1 (m = c1*rho = 0.6) the source pulls m down toward h = 0.465
  CHECK(source_inward_margin(cfg, r, 1, State{0.3, 0.6}) > 0.0);
  // on curve 2 (m = rho*(c2 + P)) it pulls m up toward h
  State u2{0.3, 0.3 * (0.7 + 0.3)};
  CHECK(source_inward_margin(cfg, r, 2, u2) > 0.0);

  CHECK(source_inward_check(cfg, r, 0.2, 0.5, 501) > 0.0);
}

TEST_CASE("hypothesis audit on the default data hull") {
  ModelConfig cfg;
  Region r;

  auto rep = audit_hypotheses(cfg, r, 0.2, 0.5);
  CHECK(rep.equilibrium_on_hull);
  CHECK(rep.subchar_on_hull);
  CHECK(rep.hull_level_pass());
  CHECK(rep.hull_violations.empty());
  CHECK(rep.subchar_violations.empty());

  // extending containment to the corner density fails for the default
  // coefficients: h leaves the region on an interval below rho_corner
  CHECK_FALSE(rep.equilibrium_to_corner);
  REQUIRE_FALSE(rep.corner_violations.empty());
  CHECK(rep.corner_violations.front().lo == doctest::Approx(0.52).epsilon(5e-2));
  CHECK(rep.corner_violations.back().hi == doctest::Approx(1.3).epsilon(1e-2));

  auto text = rep.to_text();
  CHECK(text.find("equilibrium_on_hull: pass") != std::string::npos);
  CHECK(text.find("subcharacteristic_on_hull: pass") != std::string::npos);
  CHECK(text.find("equilibrium_to_corner: fail") != std::string::npos);
}

TEST_CASE("audit flags a hull where equilibrium leaves the region") {
  ModelConfig cfg;
  Region r;
  auto rep = audit_hypotheses(cfg, r, 0.2, 0.9);
  CHECK_FALSE(rep.equilibrium_on_hull);
  CHECK_FALSE(rep.hull_level_pass());
  REQUIRE_FALSE(rep.hull_violations.empty());
  // h crosses Z = c2 where h/rho - P = 2 - 2.5*rho = 0.7
  CHECK(rep.hull_violations.front().lo == doctest::Approx(0.52).epsilon(1e-2));
}

TEST_CASE("audit checks supplied initial data") {
  ModelConfig cfg;
  Region r;
  std::vector<double> rho{0.2, 0.3, 0.5};
  std::vector<double> m{0.34, 0.465, 0.625};
  auto rep = audit_hypotheses(cfg, r, 0.2, 0.5, rho, m);
  CHECK(rep.initial_checked);
  CHECK(rep.initial_in_region);
  CHECK(rep.initial_min_slack > 0.0);

  m[1] = 0.7; // W = 0.7/0.3 > 2 leaves the region
  rep = audit_hypotheses(cfg, r, 0.2, 0.5, rho, m);
  CHECK_FALSE(rep.initial_in_region);
}

TEST_CASE("region validation") {
  Region r;
  CHECK_NOTHROW(r.validate());
  r.c2 = 2.5;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r = Region{};
  r.c2 = 0.0;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
}
