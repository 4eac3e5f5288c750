#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "trelax/grid.hpp"
#include "trelax/scalar.hpp"

using namespace trelax;

namespace {

ScalarFlux default_flux() { return make_scalar_flux(ModelConfig{}, 0.0, 1.0); }

} // namespace

TEST_CASE("reduced flux values and sonic point") {
  auto f = default_flux();
  // g(rho) = rho*(2 - 1.5*rho) - rho^2 = 2*rho - 2.5*rho^2
  CHECK(eval_g(f, 0.2) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(eval_g(f, 0.6) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(eval_g(f, 0.1) == doctest::Approx(0.175).epsilon(1e-15));
  CHECK(eval_g(f, 0.7) == doctest::Approx(0.175).epsilon(1e-15));
  CHECK(eval_g(f, 0.4) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(f.concave);
  REQUIRE(f.sonic.size() == 1);
  CHECK(f.sonic[0] == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("exact riemann flux") {
  auto f = default_flux();
  // increasing data: min over the interval, attained at the endpoints
  CHECK(godunov_flux(f, 0.1, 0.7) == doctest::Approx(0.175).epsilon(1e-14));
  CHECK(godunov_flux(f, 0.2, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
  // decreasing data spanning the sonic point: max is g at the sonic point
  CHECK(godunov_flux(f, 0.7, 0.1) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(godunov_flux(f, 0.5, 0.5) == doctest::Approx(eval_g(f, 0.5)).epsilon(1e-15));
  CHECK_THROWS_AS(godunov_flux(f, -0.1, 0.5), std::domain_error);
}

TEST_CASE("monotone flux on random pairs") {
  auto f = default_flux();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    double l = d(rng), r = d(rng), dl = 1e-4;
    // nondecreasing in the left argument, nonincreasing in the right
    if (l + dl <= 1.0)
      CHECK(godunov_flux(f, l + dl, r) >= godunov_flux(f, l, r) - 1e-14);
    if (r + dl <= 1.0)
      CHECK(godunov_flux(f, l, r + dl) <= godunov_flux(f, l, r) + 1e-14);
  }
}

TEST_CASE("single godunov step on four cells") {
  auto f = default_flux();
  ScalarField u;
  u.rho = {0.2, 0.2, 0.6, 0.6};
  double dx = 0.5, dt = 0.1; // lam = 0.2
  step_scalar(f, u, dt, dx, Bc::periodic);
  // interface fluxes: (0.6|0.2) -> 0.4 sonic, (0.2|0.2) -> 0.3,
  // (0.2|0.6) -> 0.3 chord min, (0.6|0.6) -> 0.3
  CHECK(u.rho[0] == doctest::Approx(0.22).epsilon(1e-14));
  CHECK(u.rho[1] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(u.rho[2] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(u.rho[3] == doctest::Approx(0.58).epsilon(1e-14));
  CHECK(u.t == doctest::Approx(dt).epsilon(1e-15));

  CHECK_THROWS_AS(step_scalar(f, u, 1.0, dx, Bc::periodic), std::invalid_argument);
}

TEST_CASE("mass is conserved on periodic runs") {
  auto f = default_flux();
  Grid g;
  g.n = 128;
  ScalarField u;
  u.rho.resize(g.n);
  for (int i = 0; i < g.n; ++i) u.rho[i] = 0.3 + 0.08 * std::sin(3.14159265358979323846 * g.center(i));
  double mass0 = 0.0;
  for (double v : u.rho) mass0 += v * g.dx();
  advance_scalar(f, u, g, 0.5);
  double mass1 = 0.0;
  for (double v : u.rho) mass1 += v * g.dx();
  CHECK(mass1 == doctest::Approx(mass0).epsilon(1e-13));
}

TEST_CASE("exact riemann solution") {
  auto f = default_flux();
  // increasing jump 0.2 -> 0.6: stationary shock (equal flux values)
  CHECK(exact_riemann_scalar(f, 0.2, 0.6, -0.1) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(exact_riemann_scalar(f, 0.2, 0.6, 0.1) == doctest::Approx(0.6).epsilon(1e-14));
  // decreasing jump 0.6 -> 0.2: rarefaction between g'(0.6) = -1 and g'(0.2) = 1
  CHECK(exact_riemann_scalar(f, 0.6, 0.2, -1.5) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(exact_riemann_scalar(f, 0.6, 0.2, 1.5) == doctest::Approx(0.2).epsilon(1e-14));
  // inside the fan g'(rho) = xi, rho = (2 - xi)/5
  CHECK(exact_riemann_scalar(f, 0.6, 0.2, 0.0) == doctest::Approx(0.4).epsilon(1e-10));
  CHECK(exact_riemann_scalar(f, 0.6, 0.2, 0.5) == doctest::Approx(0.3).epsilon(1e-10));

  // a convex equilibrium law destroys concavity of g; the closed form refuses
  ModelConfig convexish;
  convexish.b = -1.0;
  auto f2 = make_scalar_flux(convexish, 0.0, 1.0);
  CHECK_FALSE(f2.concave);
  CHECK_THROWS_AS(exact_riemann_scalar(f2, 0.2, 0.6, 0.0), std::runtime_error);
}

TEST_CASE("godunov converges on smooth data") {
  auto f = default_flux();
  const double t_end = 0.1;
  auto run = [&](int n) {
    Grid g;
    g.n = n;
    ScalarField u;
    u.rho.resize(n);
    for (int i = 0; i < n; ++i)
      u.rho[i] = 0.3 + 0.08 * std::sin(3.14159265358979323846 * g.center(i));
    advance_scalar(f, u, g, t_end);
    return u.rho;
  };
  auto fine = run(1024);
  std::vector<double> ns, errs;
  for (int n : {64, 128, 256}) {
    auto coarse = run(n);
    int ratio = 1024 / n;
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double avg = 0.0;
      for (int j = 0; j < ratio; ++j) avg += fine[i * ratio + j];
      avg /= ratio;
      err += std::abs(coarse[i] - avg) * (2.0 / n);
    }
    ns.push_back(n);
    errs.push_back(err);
  }
  // first-order scheme on a smooth pre-shock solution
  double rate01 = std::log(errs[0] / errs[1]) / std::log(2.0);
  double rate12 = std::log(errs[1] / errs[2]) / std::log(2.0);
  CHECK(rate01 > 0.75);
  CHECK(rate12 > 0.75);
  CHECK(rate01 < 1.35);
  CHECK(rate12 < 1.35);
}

TEST_CASE("entropy residual signs") {
  auto f = default_flux();
  Grid g;
  g.n = 200;

  // admissible stationary shock 0.2 -> 0.6
  ScalarField u;
  u.rho.resize(g.n);
  for (int i = 0; i < g.n; ++i) u.rho[i] = g.center(i) < 0.0 ? 0.2 : 0.6;
  ScalarHistory hist;
  advance_scalar(f, u, g, 0.4, 0.9, &hist);

  SpaceTimeBump phi{-0.5, 0.5, 0.05, 0.35, 1.0};
  for (double k : {0.1, 0.3, 0.4, 0.5, 0.7}) {
    CHECK(kruzkov_residual(f, hist, k, phi) <= 1e-3 * phi.sup());
  }

  // the same jump frozen in place with the sides swapped is an expansion
  // shock (it should open into a rarefaction); the residual flags it
  ScalarHistory bad;
  bad.x_left = g.x_left;
  bad.dx = g.dx();
  std::vector<double> frozen(g.n);
  for (int i = 0; i < g.n; ++i) frozen[i] = g.center(i) < 0.0 ? 0.6 : 0.2;
  for (int s = 0; s <= 8; ++s) {
    bad.times.push_back(0.05 * s);
    bad.fields.push_back(frozen);
  }
  CHECK(kruzkov_residual(f, bad, 0.4, phi) > 0.0);

  CHECK_THROWS_AS(kruzkov_residual(f, ScalarHistory{}, 0.4, phi), std::invalid_argument);
}

TEST_CASE("flux interval validation") {
  CHECK_THROWS_AS(make_scalar_flux(ModelConfig{}, 0.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_scalar_flux(ModelConfig{}, -0.2, 1.0), std::invalid_argument);
}
