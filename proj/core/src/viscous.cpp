#include "trelax/viscous.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "trelax/diagnostics.hpp"

namespace trelax {

namespace {

constexpr int kMaxHalvings = 20;

double spectral_radius(const ModelConfig& cfg, const State& s) {
  const EigenData e = eigensystem(cfg, s);
  return std::max(std::abs(e.lambda1), std::abs(e.lambda2));
}

int neighbor(int i, int n, Bc bc) {
  if (bc == Bc::periodic) {
    i %= n;
    return i < 0 ? i + n : i;
  }
  return std::clamp(i, 0, n - 1);
}

// One raw flux + diffusion update.  Writes into f and returns true only when
// every new cell is finite and above the density floor; otherwise f is left
// untouched.
bool raw_update(const ModelConfig& cfg, FieldPair& f, const SolverParams& p,
                const Grid& g, double dt) {
  const int n = g.n;
  const double dx = g.dx();
  const double lam = dt / dx;
  const double mu = p.epsilon * dt / (dx * dx);

  std::vector<double> frho(n + 1), fm(n + 1);
  for (int j = 0; j <= n; ++j) {
    const int il = neighbor(j - 1, n, g.bc);
    const int ir = neighbor(j, n, g.bc);
    const State ul{f.rho[il], f.m[il]};
    const State ur{f.rho[ir], f.m[ir]};
    const auto fl = flux(cfg, ul);
    const auto fr = flux(cfg, ur);
    const double a = std::max(spectral_radius(cfg, ul), spectral_radius(cfg, ur));
    frho[j] = 0.5 * (fl[0] + fr[0]) - 0.5 * a * (ur.rho - ul.rho);
    fm[j] = 0.5 * (fl[1] + fr[1]) - 0.5 * a * (ur.m - ul.m);
  }

  std::vector<double> nrho(n), nm(n);
  for (int i = 0; i < n; ++i) {
    const int im = neighbor(i - 1, n, g.bc);
    const int ip = neighbor(i + 1, n, g.bc);
    nrho[i] = f.rho[i] - lam * (frho[i + 1] - frho[i]) +
              mu * (f.rho[ip] - 2.0 * f.rho[i] + f.rho[im]);
    nm[i] = f.m[i] - lam * (fm[i + 1] - fm[i]) +
            mu * (f.m[ip] - 2.0 * f.m[i] + f.m[im]);
    if (!std::isfinite(nrho[i]) || !std::isfinite(nm[i]) || nrho[i] < p.rho_floor) {
      return false;
    }
  }
  f.rho = std::move(nrho);
  f.m = std::move(nm);
  return true;
}

double total_mass(const FieldPair& f, const Grid& g) {
  double s = 0.0;
  for (double r : f.rho) s += r;
  return s * g.dx();
}

void track_region(const ModelConfig& cfg, const Region& r, const FieldPair& f,
                  StepStats& st, bool initial) {
  bool all_inside = true;
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    const State s{f.rho[i], f.m[i]};
    const ContainsResult c = contains(cfg, r, s);
    all_inside = all_inside && c.inside;
    st.min_slack = std::min({st.min_slack, c.slack_w, c.slack_z, c.slack_rho});
    const InvariantPair wz = riemann_invariants(cfg, s);
    st.w_min = std::min(st.w_min, wz.w);
    st.w_max = std::max(st.w_max, wz.w);
    st.z_min = std::min(st.z_min, wz.z);
    st.z_max = std::max(st.z_max, wz.z);
  }
  if (initial) st.initial_in_region = all_inside;
}

void check_fields(const FieldPair& f, const Grid& g) {
  if (f.rho.size() != static_cast<std::size_t>(g.n) || f.m.size() != f.rho.size()) {
    throw std::invalid_argument("field size does not match the grid");
  }
}

} // namespace

void SolverParams::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("epsilon must be finite and >= 0");
  }
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be finite and > 0");
  }
  if (!(cfl > 0.0) || !(cfl <= 1.0)) {
    throw std::invalid_argument("cfl must lie in (0, 1]");
  }
  if (!(rho_floor >= kRhoFloor)) {
    throw std::invalid_argument("rho_floor must be at least the model vacuum threshold");
  }
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("t_final must be finite and >= 0");
  }
}

FieldPair apply_initial_data(const Grid& g, const std::function<double(double)>& rho0,
                             const std::function<double(double)>& m0,
                             double floor_shift, double rho_floor) {
  g.validate();
  if (!std::isfinite(floor_shift) || !(rho_floor >= kRhoFloor)) {
    throw std::invalid_argument("bad floor parameters for initial data");
  }
  FieldPair f;
  f.rho.resize(g.n);
  f.m.resize(g.n);
  for (int i = 0; i < g.n; ++i) {
    const double x = g.center(i);
    const double r = rho0(x) + floor_shift;
    const double mm = m0(x);
    if (!std::isfinite(r) || !std::isfinite(mm)) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "initial data not finite at x = %.17g", x);
      throw std::invalid_argument(buf);
    }
    if (r < rho_floor) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "initial density below floor at x = %.17g", x);
      throw std::invalid_argument(buf);
    }
    f.rho[i] = r;
    f.m[i] = mm;
  }
  return f;
}

double stable_dt(const ModelConfig& cfg, const FieldPair& f, const SolverParams& p,
                 const Grid& g) {
  check_fields(f, g);
  double lmax = 0.0;
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    lmax = std::max(lmax, spectral_radius(cfg, {f.rho[i], f.m[i]}));
  }
  if (!std::isfinite(lmax)) {
    throw std::runtime_error("non-finite wave speed in stable_dt");
  }
  const double dx = g.dx();
  const double adv = lmax > 0.0 ? p.cfl * dx / lmax
                                : std::numeric_limits<double>::infinity();
  const double diff = 0.4 * dx * dx / std::max(p.epsilon, 1e-300);
  return std::min(adv, diff);
}

int hyperbolic_diffusive_substep(const ModelConfig& cfg, FieldPair& f,
                                 const SolverParams& p, const Grid& g, double dt) {
  check_fields(f, g);
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be finite and > 0");
  }
  const std::vector<double> rho_in = f.rho;
  const std::vector<double> m_in = f.m;
  for (int level = 0; level <= kMaxHalvings; ++level) {
    const long parts = 1L << level;
    bool ok = true;
    for (long k = 0; k < parts && ok; ++k) {
      ok = raw_update(cfg, f, p, g, dt / static_cast<double>(parts));
    }
    if (ok) return level;
    f.rho = rho_in;
    f.m = m_in;
  }
  throw std::runtime_error("density floor still violated after 20 step halvings");
}

void relaxation_substep(const ModelConfig& cfg, FieldPair& f, double dt, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("tau must be > 0");
  if (dt == 0.0) return;
  const double decay = std::exp(-dt / tau);
  for (std::size_t i = 0; i < f.rho.size(); ++i) {
    const double h = equilibrium_momentum(cfg, f.rho[i]).h;
    f.m[i] = h + (f.m[i] - h) * decay;
  }
}

StepStats advance(const ModelConfig& cfg, FieldPair& f, const SolverParams& p,
                  const Grid& g, double t_target, const AdvanceOptions& opt) {
  cfg.validate();
  p.validate();
  g.validate();
  check_fields(f, g);
  if (!std::isfinite(t_target) || t_target < f.t) {
    throw std::invalid_argument("t_target must be finite and >= current time");
  }
  if (!opt.weight.empty() && opt.weight.size() != f.rho.size()) {
    throw std::invalid_argument("weight span does not match the grid");
  }

  StepStats st;
  st.mass_initial = total_mass(f, g);
  if (opt.region) {
    opt.region->validate();
    st.region_tracked = true;
    track_region(cfg, *opt.region, f, st, true);
  }

  DissipationTally tally;
  DissipationRates prev =
      dissipation_rates(cfg, f.rho, f.m, g.dx(), g.bc, p.epsilon, p.tau, opt.weight);
  const double t_tol = 1e-14 * std::max(1.0, std::abs(t_target));
  while (t_target - f.t > t_tol) {
    const double remaining = t_target - f.t;
    double dt = std::min(stable_dt(cfg, f, p, g), opt.max_dt);
    const bool last = dt >= remaining;
    if (last) dt = remaining;
    if (!(dt > 0.0) || !std::isfinite(dt)) {
      throw std::runtime_error("time step underflow in advance");
    }

    relaxation_substep(cfg, f, 0.5 * dt, p.tau);
    st.rejections += hyperbolic_diffusive_substep(cfg, f, p, g, dt);
    relaxation_substep(cfg, f, 0.5 * dt, p.tau);
    f.t = last ? t_target : f.t + dt;

    ++st.steps;
    st.dt_min = std::min(st.dt_min, dt);
    st.dt_max = std::max(st.dt_max, dt);

    const DissipationRates cur =
        dissipation_rates(cfg, f.rho, f.m, g.dx(), g.bc, p.epsilon, p.tau, opt.weight);
    accumulate_dissipation(tally, prev, cur, dt);
    prev = cur;

    if (opt.region) track_region(cfg, *opt.region, f, st, false);
  }
  st.d_visc = tally.d_visc;
  st.d_relax = tally.d_relax;
  st.mass_final = total_mass(f, g);
  return st;
}

SolverParams rescaled_mode(const SolverParams& p) {
  p.validate();
  SolverParams q = p;
  q.epsilon = p.epsilon / p.tau;
  q.t_final = p.t_final / p.tau;
  q.tau = 1.0;
  return q;
}

Grid rescaled_grid(const Grid& g, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw std::invalid_argument("tau must be finite and > 0");
  }
  Grid s = g;
  s.x_left = g.x_left / tau;
  s.x_right = g.x_right / tau;
  return s;
}

std::string StepStats::to_text() const {
  char buf[256];
  std::string out;
  auto line = [&](const char* key, double v) {
    std::snprintf(buf, sizeof(buf), "%s: %.17g\n", key, v);
    out += buf;
  };
  std::snprintf(buf, sizeof(buf), "steps: %ld\nrejections: %ld\n", steps, rejections);
  out += buf;
  line("dt_min", dt_min);
  line("dt_max", dt_max);
  line("mass_initial", mass_initial);
  line("mass_final", mass_final);
  line("d_visc", d_visc);
  line("d_relax", d_relax);
  if (region_tracked) {
    std::snprintf(buf, sizeof(buf), "initial_in_region: %s\n",
                  initial_in_region ? "yes" : "no");
    out += buf;
    line("min_slack", min_slack);
    line("w_min", w_min);
    line("w_max", w_max);
    line("z_min", z_min);
    line("z_max", z_max);
  }
  return out;
}

void write_snapshot_csv(const std::string& path, const ModelConfig& cfg,
                        const Grid& g, const FieldPair& f) {
  check_fields(f, g);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "x,rho,m,W,Z,gap\n";
  char buf[256];
  for (int i = 0; i < g.n; ++i) {
    const State s{f.rho[i], f.m[i]};
    const InvariantPair wz = riemann_invariants(cfg, s);
    const double gap = f.m[i] - equilibrium_momentum(cfg, f.rho[i]).h;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                  g.center(i), f.rho[i], f.m[i], wz.w, wz.z, gap);
    out << buf;
  }
  if (!out) throw std::runtime_error("write failure on " + path);
}

} // namespace trelax
