#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "trelax/model.hpp"
#include "trelax/scalar.hpp"
#include "trelax/viscous.hpp"

namespace {

trelax::Grid make_grid(long n) {
  trelax::Grid g;
  g.n = static_cast<int>(n);
  return g;
}

// smooth periodic density bump on equilibrium momentum
trelax::FieldPair bump_fields(const trelax::ModelConfig& cfg, const trelax::Grid& g) {
  auto rho0 = [&](double x) {
    double s = std::sin(std::numbers::pi * (x - g.x_left) / (g.x_right - g.x_left));
    return 0.3 + 0.2 * s * s;
  };
  auto m0 = [&](double x) { return trelax::equilibrium_momentum(cfg, rho0(x)).h; };
  return trelax::apply_initial_data(g, rho0, m0, 0.0, 1e-8);
}

void bm_eigensystem(benchmark::State& state) {
  trelax::ModelConfig cfg;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rho_d(0.1, 1.0);
  std::uniform_real_distribution<double> m_d(0.0, 2.0);
  std::vector<trelax::State> pts(1024);
  for (auto& s : pts) s = {rho_d(rng), m_d(rng)};
  for (auto _ : state) {
    for (const auto& s : pts) {
      auto e = trelax::eigensystem(cfg, s);
      benchmark::DoNotOptimize(e);
    }
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(pts.size()));
}
BENCHMARK(bm_eigensystem);

void bm_hyperbolic_substep(benchmark::State& state) {
  trelax::ModelConfig cfg;
  trelax::Grid g = make_grid(state.range(0));
  trelax::SolverParams p;
  trelax::FieldPair f = bump_fields(cfg, g);
  double dt = trelax::stable_dt(cfg, f, p, g);
  for (auto _ : state) {
    trelax::hyperbolic_diffusive_substep(cfg, f, p, g, dt);
    benchmark::DoNotOptimize(f.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_hyperbolic_substep)->Arg(256)->Arg(1024)->Arg(4096);

void bm_relaxation_substep(benchmark::State& state) {
  trelax::ModelConfig cfg;
  trelax::Grid g = make_grid(state.range(0));
  trelax::FieldPair f = bump_fields(cfg, g);
  for (auto _ : state) {
    trelax::relaxation_substep(cfg, f, 1e-4, 1e-3);
    benchmark::DoNotOptimize(f.m.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_relaxation_substep)->Arg(1024)->Arg(4096);

void bm_godunov_step(benchmark::State& state) {
  trelax::ModelConfig cfg;
  trelax::Grid g = make_grid(state.range(0));
  auto flux = trelax::make_scalar_flux(cfg, 0.0, 1.0);
  trelax::ScalarField u;
  u.rho.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    double s = std::sin(std::numbers::pi * (g.center(i) - g.x_left) / (g.x_right - g.x_left));
    u.rho[i] = 0.3 + 0.2 * s * s;
  }
  double dx = g.dx();
  double dt = 0.9 * dx / 2.0; // |g'| <= 2 on [0, 1] for the default flux
  for (auto _ : state) {
    trelax::step_scalar(flux, u, dt, dx, g.bc);
    benchmark::DoNotOptimize(u.rho.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_godunov_step)->Arg(1024)->Arg(4096);

} // namespace

BENCHMARK_MAIN();
