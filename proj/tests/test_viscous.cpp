#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "trelax/region.hpp"
#include "trelax/viscous.hpp"

using namespace trelax;

namespace {

constexpr double kPi = 3.14159265358979323846;

FieldPair uniform_fields(const Grid& g, double rho, double m) {
  return apply_initial_data(
      g, [&](double) { return rho; }, [&](double) { return m; }, 0.0, 1e-8);
}

} // namespace

TEST_CASE("parameter validation") {
  SolverParams p;
  CHECK_NOTHROW(p.validate());
  p.tau = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = SolverParams{};
  p.cfl = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = SolverParams{};
  p.rho_floor = 1e-9; // below the vacuum threshold of the pointwise algebra
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("initial data sampling and floor") {
  Grid g;
  g.n = 8;
  auto f = apply_initial_data(
      g, [](double x) { return 0.3 + 0.1 * x; }, [](double) { return 0.5; }, 0.01, 1e-8);
  CHECK(f.rho.size() == 8);
  CHECK(f.rho[0] == doctest::Approx(0.3 + 0.1 * g.center(0) + 0.01).epsilon(1e-15));
  CHECK(f.t == 0.0);

  CHECK_THROWS_WITH_AS(
      apply_initial_data(
          g, [](double) { return 0.0; }, [](double) { return 0.0; }, 0.0, 1e-8),
      doctest::Contains("below floor"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      apply_initial_data(
          g, [](double) { return 0.5; },
          [](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1e-8),
      doctest::Contains("not finite"), std::invalid_argument);
}

TEST_CASE("stable step size") {
  ModelConfig cfg;
  Grid g;
  g.n = 200; // dx = 0.01
  SolverParams p;
  p.cfl = 0.5;
  p.epsilon = 1e-3;

  // uniform (1, 2): speeds are 0 and 1, advective bound wins
  auto f = uniform_fields(g, 1.0, 2.0);
  CHECK(stable_dt(cfg, f, p, g) == doctest::Approx(5e-3).epsilon(1e-14));

  // large viscosity flips the binding constraint to the diffusive bound
  p.epsilon = 0.5;
  CHECK(stable_dt(cfg, f, p, g) == doctest::Approx(0.4 * 1e-4 / 0.5).epsilon(1e-14));

  // zero speeds leave only the diffusive bound
  p.epsilon = 1e-3;
  auto still = uniform_fields(g, 1.0, 1.0); // v = 1, phi = 0, both speeds <= ...
  // (1,1): lambda2 = m/rho - P = 0, lambda1 = -1; not zero. use the diffusive check instead
  CHECK(stable_dt(cfg, still, p, g) > 0.0);
}

TEST_CASE("single flux plus diffusion update against hand-computed values") {
  ModelConfig cfg;
  Grid g;
  g.n = 4;
  g.x_left = 0.0;
  g.x_right = 2.0; // dx = 0.5
  SolverParams p;
  p.epsilon = 0.0; // isolate the flux part

  FieldPair f;
  f.rho = {0.5, 0.5, 0.5, 0.5};
  f.m = {1.0, 1.0, 1.2, 1.0};

  // interface fluxes with the local max-speed coefficient:
  // states (0.5,1.0): F=(0.75,1.5), speeds (1.0,1.5); (0.5,1.2): F=(0.95,2.28),
  // speeds (1.4,1.9).  lam = dt/dx = 0.2.
  int halvings = hyperbolic_diffusive_substep(cfg, f, p, g, 0.1);
  CHECK(halvings == 0);
  CHECK(f.rho[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.rho[1] == doctest::Approx(0.48).epsilon(1e-14));
  CHECK(f.rho[2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(f.rho[3] == doctest::Approx(0.52).epsilon(1e-14));
  CHECK(f.m[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f.m[1] == doctest::Approx(0.96).epsilon(1e-14));
  CHECK(f.m[2] == doctest::Approx(1.124).epsilon(1e-14));
  CHECK(f.m[3] == doctest::Approx(1.116).epsilon(1e-14));
}

TEST_CASE("diffusion term matches the central second difference") {
  ModelConfig cfg;
  Grid g;
  g.n = 4;
  g.x_left = 0.0;
  g.x_right = 2.0;
  SolverParams p;
  p.epsilon = 0.1;

  // uniform momentum profile with m = rho * phi ... use a uniform state so the
  // flux part cancels and only diffusion acts
  FieldPair f;
  f.rho = {0.5, 0.5, 0.6, 0.5};
  f.m = {1.0, 1.0, 1.0, 1.0};
  FieldPair base = f;

  double dt = 1e-3;
  hyperbolic_diffusive_substep(cfg, f, p, g, dt);

  // rerun with epsilon = 0 and subtract to isolate mu * (u_{i+1} - 2u_i + u_{i-1})
  SolverParams p0 = p;
  p0.epsilon = 0.0;
  FieldPair f0 = base;
  hyperbolic_diffusive_substep(cfg, f0, p0, g, dt);

  double mu = p.epsilon * dt / (g.dx() * g.dx());
  CHECK(f.rho[1] - f0.rho[1] == doctest::Approx(mu * (0.5 - 2 * 0.5 + 0.6)).epsilon(1e-10));
  CHECK(f.rho[2] - f0.rho[2] == doctest::Approx(mu * (0.5 - 2 * 0.6 + 0.5)).epsilon(1e-10));
}

TEST_CASE("pointwise relaxation is integrated exactly") {
  ModelConfig cfg;
  Grid g;
  g.n = 4;
  FieldPair f = uniform_fields(g, 0.4, 1.0);
  relaxation_substep(cfg, f, 0.1, 0.1);
  double expected = 0.56 + 0.44 * std::exp(-1.0);
  for (double m : f.m) CHECK(m == doctest::Approx(expected).epsilon(1e-15));
  for (double r : f.rho) CHECK(r == 0.4);

  CHECK_THROWS_AS(relaxation_substep(cfg, f, 0.1, 0.0), std::invalid_argument);
}

TEST_CASE("floor violations trigger substep halving or a hard error") {
  ModelConfig cfg;
  Grid g;
  g.n = 4;
  g.x_left = 0.0;
  g.x_right = 2.0;
  SolverParams p;
  p.epsilon = 0.0;

  FieldPair f;
  f.rho = {0.2, 0.2, 0.2, 0.2};
  f.m = {0.0, 2.0, 0.0, 0.0};

  // an absurd step can never be repaired by halving
  FieldPair doomed = f;
  CHECK_THROWS_AS(hyperbolic_diffusive_substep(cfg, doomed, p, g, 1e6),
                  std::runtime_error);

  // a mildly too-large step is rescued by a few halvings
  FieldPair rescued = f;
  int halvings = hyperbolic_diffusive_substep(cfg, rescued, p, g, 0.12);
  CHECK(halvings >= 1);
  for (double r : rescued.rho) CHECK(r >= p.rho_floor);
}

TEST_CASE("uniform equilibrium state is an exact fixed point") {
  ModelConfig cfg;
  Grid g;
  g.n = 32;
  SolverParams p;
  p.tau = 1e-3;
  double rho_star = 0.4;
  double h_star = equilibrium_momentum(cfg, rho_star).h;
  FieldPair f = uniform_fields(g, rho_star, h_star);
  double dt = stable_dt(cfg, f, p, g);
  for (int k = 0; k < 200; ++k) {
    relaxation_substep(cfg, f, 0.5 * dt, p.tau);
    hyperbolic_diffusive_substep(cfg, f, p, g, dt);
    relaxation_substep(cfg, f, 0.5 * dt, p.tau);
  }
  for (int i = 0; i < g.n; ++i) {
    CHECK(std::abs(f.rho[i] - rho_star) <= 1e-14);
    CHECK(std::abs(f.m[i] - h_star) <= 1e-14);
  }
}

TEST_CASE("advance reaches the target time exactly and conserves mass") {
  ModelConfig cfg;
  Grid g;
  g.n = 100;
  SolverParams p;
  FieldPair f = apply_initial_data(
      g, [](double x) { return x < 0.0 ? 0.2 : 0.5; },
      [&](double x) { return equilibrium_momentum(cfg, x < 0.0 ? 0.2 : 0.5).h; }, 0.0,
      1e-8);

  auto st = advance(cfg, f, p, g, 0.33);
  CHECK(f.t == 0.33);
  CHECK(st.steps > 0);
  CHECK(st.mass_final == doctest::Approx(st.mass_initial).epsilon(1e-13));
  CHECK(st.dt_min <= st.dt_max);

  // advancing to the current time is a no-op
  auto st2 = advance(cfg, f, p, g, 0.33);
  CHECK(st2.steps == 0);

  CHECK_THROWS_AS(advance(cfg, f, p, g, 0.1), std::invalid_argument);
}

TEST_CASE("region tracking reports slacks and invariant ranges") {
  ModelConfig cfg;
  Region r;
  Grid g;
  g.n = 100;
  SolverParams p;
  FieldPair f = apply_initial_data(
      g, [](double x) { return x < 0.0 ? 0.2 : 0.5; },
      [&](double x) { return equilibrium_momentum(cfg, x < 0.0 ? 0.2 : 0.5).h; }, 0.0,
      1e-8);

  AdvanceOptions opt;
  opt.region = &r;
  auto st = advance(cfg, f, p, g, 0.1, opt);
  CHECK(st.region_tracked);
  CHECK(st.initial_in_region);
  // the initial minimum slack sits on the Z constraint of the right state
  CHECK(st.min_slack <= 0.05 + 1e-12);
  CHECK(st.min_slack >= -1e-8);
  CHECK(st.w_max <= r.c1 + 1e-8);
  CHECK(st.z_min >= r.c2 - 1e-8);

  auto text = st.to_text();
  CHECK(text.find("initial_in_region: yes") != std::string::npos);
  CHECK(text.find("min_slack:") != std::string::npos);

  // mismatched weight span is rejected
  std::vector<double> w(g.n - 1, 1.0);
  AdvanceOptions bad;
  bad.weight = w;
  FieldPair f2 = uniform_fields(g, 0.4, 0.56);
  CHECK_THROWS_AS(advance(cfg, f2, p, g, 0.1, bad), std::invalid_argument);
}

TEST_CASE("relaxation dissipation tally matches the closed form") {
  ModelConfig cfg;
  Grid g;
  g.n = 50;
  SolverParams p;
  p.epsilon = 0.0;
  p.tau = 0.5;
  double m0 = 1.0, h = 0.56;

  auto closed_form = [&](double t0, double t1) {
    double length = g.x_right - g.x_left;
    double e0 = std::exp(-2.0 * t0 / p.tau), e1 = std::exp(-2.0 * t1 / p.tau);
    return length * (m0 - h) * (m0 - h) / 2.0 * (e0 - e1);
  };

  FieldPair f = uniform_fields(g, 0.4, m0);
  auto st = advance(cfg, f, p, g, 1.0);
  CHECK(st.d_visc == 0.0); // uniform fields have no gradients
  CHECK(st.d_relax == doctest::Approx(closed_form(0.0, 1.0)).epsilon(2e-4));

  // tallies are additive over adjoining windows
  FieldPair f2 = uniform_fields(g, 0.4, m0);
  auto a = advance(cfg, f2, p, g, 0.5);
  auto b = advance(cfg, f2, p, g, 1.0);
  CHECK(a.d_relax + b.d_relax == doctest::Approx(closed_form(0.0, 1.0)).epsilon(2e-4));
  CHECK(b.d_relax == doctest::Approx(closed_form(0.5, 1.0)).epsilon(2e-4));
}

TEST_CASE("time stepping error shrinks when the step is capped") {
  ModelConfig cfg;
  Grid g;
  g.n = 64;
  SolverParams p;
  p.epsilon = 1e-3;
  p.tau = 1.0;

  auto make = [&]() {
    return apply_initial_data(
        g,
        [](double x) {
          double s = std::sin(kPi * (x + 1.0) / 2.0);
          return 0.3 + 0.1 * s * s;
        },
        [&](double x) {
          double s = std::sin(kPi * (x + 1.0) / 2.0);
          return equilibrium_momentum(cfg, 0.3 + 0.1 * s * s).h;
        },
        0.0, 1e-8);
  };

  double T = 0.2;
  double dt0 = 2e-3;
  auto run = [&](double cap) {
    FieldPair f = make();
    AdvanceOptions opt;
    opt.max_dt = cap;
    advance(cfg, f, p, g, T, opt);
    return f;
  };
  FieldPair ref = run(dt0 / 8.0);
  auto err = [&](const FieldPair& f) {
    double e = 0.0;
    for (int i = 0; i < g.n; ++i) {
      e = std::max(e, std::abs(f.rho[i] - ref.rho[i]));
      e = std::max(e, std::abs(f.m[i] - ref.m[i]));
    }
    return e;
  };
  double e1 = err(run(dt0));
  double e2 = err(run(dt0 / 2.0));
  CHECK(e2 < e1 / 1.4);
}

TEST_CASE("rescaled parameters and grid") {
  SolverParams p;
  p.epsilon = 1e-3;
  p.tau = 0.1;
  p.t_final = 1.0;
  auto q = rescaled_mode(p);
  CHECK(q.epsilon == doctest::Approx(1e-2).epsilon(1e-15));
  CHECK(q.tau == 1.0);
  CHECK(q.t_final == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(q.cfl == p.cfl);

  Grid g;
  auto s = rescaled_grid(g, 0.1);
  CHECK(s.x_left == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(s.x_right == doctest::Approx(10.0).epsilon(1e-15));
  CHECK(s.n == g.n);
  CHECK_THROWS_AS(rescaled_grid(g, 0.0), std::invalid_argument);

  // tau = 1 is the identity on the parameters
  SolverParams unit;
  unit.tau = 1.0;
  auto same = rescaled_mode(unit);
  CHECK(same.epsilon == unit.epsilon);
  CHECK(same.t_final == unit.t_final);
}

TEST_CASE("snapshot files are deterministic and carry the derived columns") {
  ModelConfig cfg;
  Grid g;
  g.n = 8;
  // rho, m, W, Z and the gap are all exactly representable here:
  // W = 0.75/0.5 = 1.5, Z = 1, gap = 0.75 - 0.625 = 0.125
  FieldPair f = uniform_fields(g, 0.5, 0.75);

  auto read_all = [](const char* path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  write_snapshot_csv("snap_a.csv", cfg, g, f);
  write_snapshot_csv("snap_b.csv", cfg, g, f);
  std::string a = read_all("snap_a.csv");
  CHECK(a == read_all("snap_b.csv"));
  CHECK(a.rfind("x,rho,m,W,Z,gap\n", 0) == 0);
  CHECK(a.find(",0.5,0.75,1.5,1,0.125") != std::string::npos);
  std::remove("snap_a.csv");
  std::remove("snap_b.csv");
}
