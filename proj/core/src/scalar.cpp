#include "trelax/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trelax {

namespace {

double g_of(const ModelConfig& cfg, double rho) {
  return equilibrium_momentum(cfg, rho).h - rho * pressure(cfg, rho).p;
}

double dg_of(const ModelConfig& cfg, double rho) {
  const auto pr = pressure(cfg, rho);
  return equilibrium_momentum(cfg, rho).dh - (pr.p + rho * pr.dp);
}

double ddg_of(const ModelConfig& cfg, double rho) {
  const auto pr = pressure(cfg, rho);
  return equilibrium_momentum(cfg, rho).ddh - (2.0 * pr.dp + rho * pr.ddp);
}

void require_in_interval(const ScalarFlux& f, double rho, const char* who) {
  if (!(rho >= f.rho_lo && rho <= f.rho_hi))
    throw std::domain_error(std::string(who) + ": density outside the flux interval");
}

// bisection for dg(rho) = xi on [lo, hi] where dg is decreasing
double invert_dg(const ScalarFlux& f, double lo, double hi, double xi) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (eval_dg(f, mid) > xi)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

} // namespace

ScalarFlux make_scalar_flux(const ModelConfig& cfg, double rho_lo, double rho_hi) {
  if (!(rho_hi > rho_lo) || !(rho_lo >= 0.0))
    throw std::invalid_argument("make_scalar_flux: bad density interval");
  ScalarFlux f;
  f.cfg = cfg;
  f.rho_lo = rho_lo;
  f.rho_hi = rho_hi;

  const int n = 4096;
  const double step = (rho_hi - rho_lo) / n;
  f.concave = true;
  double prev = dg_of(cfg, rho_lo);
  for (int i = 1; i <= n; ++i) {
    const double rho = rho_lo + step * i;
    const double cur = dg_of(cfg, rho);
    if (prev > 0.0 && cur <= 0.0) {
      // refine the sign change of g'
      double lo = rho - step, hi = rho;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dg_of(cfg, mid) > 0.0 ? lo : hi) = mid;
      }
      f.sonic.push_back(0.5 * (lo + hi));
    } else if (prev < 0.0 && cur >= 0.0) {
      double lo = rho - step, hi = rho;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (dg_of(cfg, mid) < 0.0 ? lo : hi) = mid;
      }
      f.sonic.push_back(0.5 * (lo + hi));
    }
    if (ddg_of(cfg, rho_lo + step * (i - 0.5)) >= 0.0) f.concave = false;
    prev = cur;
  }
  return f;
}

double eval_g(const ScalarFlux& f, double rho) { return g_of(f.cfg, rho); }
double eval_dg(const ScalarFlux& f, double rho) { return dg_of(f.cfg, rho); }

double godunov_flux(const ScalarFlux& f, double l, double r) {
  require_in_interval(f, l, "godunov_flux");
  require_in_interval(f, r, "godunov_flux");
  const double a = std::min(l, r), b = std::max(l, r);
  double best = eval_g(f, l);
  const double gr = eval_g(f, r);
  if (l <= r) {
    best = std::min(best, gr);
    for (double s : f.sonic)
      if (s > a && s < b) best = std::min(best, eval_g(f, s));
  } else {
    best = std::max(best, gr);
    for (double s : f.sonic)
      if (s > a && s < b) best = std::max(best, eval_g(f, s));
  }
  return best;
}

void step_scalar(const ScalarFlux& f, ScalarField& u, double dt, double dx, Bc bc) {
  const int n = static_cast<int>(u.rho.size());
  if (n < 2) throw std::invalid_argument("step_scalar: field too short");
  double max_speed = 0.0;
  for (double rho : u.rho) max_speed = std::max(max_speed, std::abs(eval_dg(f, rho)));
  if (dt * max_speed > dx * (1.0 + 1e-12))
    throw std::invalid_argument("step_scalar: time step violates the CFL bound");

  const auto left_ghost = bc == Bc::periodic ? u.rho[n - 1] : u.rho[0];
  const auto right_ghost = bc == Bc::periodic ? u.rho[0] : u.rho[n - 1];
  std::vector<double> fhat(n + 1);
  fhat[0] = godunov_flux(f, left_ghost, u.rho[0]);
  for (int i = 1; i < n; ++i) fhat[i] = godunov_flux(f, u.rho[i - 1], u.rho[i]);
  fhat[n] = godunov_flux(f, u.rho[n - 1], right_ghost);

  const double lam = dt / dx;
  for (int i = 0; i < n; ++i) u.rho[i] -= lam * (fhat[i + 1] - fhat[i]);
  u.t += dt;
}

void advance_scalar(const ScalarFlux& f, ScalarField& u, const Grid& g,
                    double t_target, double cfl, ScalarHistory* hist) {
  g.validate();
  if (static_cast<int>(u.rho.size()) != g.n)
    throw std::invalid_argument("advance_scalar: field does not match grid");
  if (!(cfl > 0.0 && cfl <= 1.0))
    throw std::invalid_argument("advance_scalar: cfl must be in (0, 1]");
  if (hist && hist->times.empty()) {
    hist->x_left = g.x_left;
    hist->dx = g.dx();
    hist->times.push_back(u.t);
    hist->fields.push_back(u.rho);
  }
  const double dx = g.dx();
  while (u.t < t_target - 1e-14 * std::max(1.0, t_target)) {
    double max_speed = 0.0;
    for (double rho : u.rho) max_speed = std::max(max_speed, std::abs(eval_dg(f, rho)));
    double dt = max_speed > 0.0 ? cfl * dx / max_speed : t_target - u.t;
    dt = std::min(dt, t_target - u.t);
    step_scalar(f, u, dt, dx, g.bc);
    if (hist) {
      hist->times.push_back(u.t);
      hist->fields.push_back(u.rho);
    }
  }
  u.t = t_target;
  if (hist) hist->times.back() = t_target;
}

double exact_riemann_scalar(const ScalarFlux& f, double rho_l, double rho_r, double xi) {
  require_in_interval(f, rho_l, "exact_riemann_scalar");
  require_in_interval(f, rho_r, "exact_riemann_scalar");
  if (!f.concave)
    throw std::runtime_error("exact_riemann_scalar: only concave fluxes are supported");
  if (rho_l == rho_r) return rho_l;
  if (rho_l < rho_r) {
    // increasing jump: admissible shock at the chord speed
    const double s = (eval_g(f, rho_r) - eval_g(f, rho_l)) / (rho_r - rho_l);
    return xi < s ? rho_l : rho_r;
  }
  // decreasing jump: rarefaction between the characteristic speeds
  const double sl = eval_dg(f, rho_l);
  const double sr = eval_dg(f, rho_r);
  if (xi <= sl) return rho_l;
  if (xi >= sr) return rho_r;
  return invert_dg(f, rho_r, rho_l, xi);
}

double SpaceTimeBump::value(double x, double t) const {
  if (x <= x0 || x >= x1 || t <= t0 || t >= t1) return 0.0;
  const double pi = 3.14159265358979323846;
  const double sx = std::sin(pi * (x - x0) / (x1 - x0));
  const double st = std::sin(pi * (t - t0) / (t1 - t0));
  return amp * sx * sx * st * st;
}

double SpaceTimeBump::dt(double x, double t) const {
  if (x <= x0 || x >= x1 || t <= t0 || t >= t1) return 0.0;
  const double pi = 3.14159265358979323846;
  const double sx = std::sin(pi * (x - x0) / (x1 - x0));
  const double arg = pi * (t - t0) / (t1 - t0);
  return amp * sx * sx * 2.0 * std::sin(arg) * std::cos(arg) * pi / (t1 - t0);
}

double SpaceTimeBump::dx(double x, double t) const {
  if (x <= x0 || x >= x1 || t <= t0 || t >= t1) return 0.0;
  const double pi = 3.14159265358979323846;
  const double st = std::sin(pi * (t - t0) / (t1 - t0));
  const double arg = pi * (x - x0) / (x1 - x0);
  return amp * st * st * 2.0 * std::sin(arg) * std::cos(arg) * pi / (x1 - x0);
}

double kruzkov_residual(const ScalarFlux& f, const ScalarHistory& hist, double k,
                        const SpaceTimeBump& phi) {
  if (hist.times.size() < 2)
    throw std::invalid_argument("kruzkov_residual: history needs at least two times");
  const std::size_t ncell = hist.fields.front().size();
  const double x_lo = hist.x_left;
  const double x_hi = hist.x_left + hist.dx * ncell;
  if (phi.x0 < x_lo || phi.x1 > x_hi || phi.t0 < hist.times.front() ||
      phi.t1 > hist.times.back())
    throw std::invalid_argument("kruzkov_residual: test bump not supported in the window");
  const double gk = eval_g(f, k);
  double res = 0.0;
  for (std::size_t n = 0; n + 1 < hist.times.size(); ++n) {
    const double dt = hist.times[n + 1] - hist.times[n];
    const double tm = hist.times[n] + 0.5 * dt;
    const auto& field = hist.fields[n];
    for (std::size_t i = 0; i < ncell; ++i) {
      const double x = hist.x_left + (i + 0.5) * hist.dx;
      const double rho = field[i];
      const double sgn = rho > k ? 1.0 : (rho < k ? -1.0 : 0.0);
      const double ent = std::abs(rho - k);
      const double q = sgn * (eval_g(f, rho) - gk);
      res -= (ent * phi.dt(x, tm) + q * phi.dx(x, tm)) * hist.dx * dt;
    }
  }
  return res;
}

} // namespace trelax
