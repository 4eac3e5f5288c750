#include "trelax/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <string>

#include "trelax/diagnostics.hpp"
#include "trelax/scalar.hpp"

namespace trelax {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir + ": " + ec.message());
  }
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

void write_density_csv(const std::string& path, const Grid& g,
                       const std::vector<double>& rho) {
  std::string out = "x,rho\n";
  for (int i = 0; i < g.n; ++i) {
    out += fmt17(g.center(i)) + "," + fmt17(rho[i]) + "\n";
  }
  write_text(path, out);
}

void merge_stats(StepStats& a, const StepStats& b) {
  a.steps += b.steps;
  a.rejections += b.rejections;
  a.dt_min = std::min(a.dt_min, b.dt_min);
  a.dt_max = std::max(a.dt_max, b.dt_max);
  a.mass_final = b.mass_final;
  a.min_slack = std::min(a.min_slack, b.min_slack);
  a.w_min = std::min(a.w_min, b.w_min);
  a.w_max = std::max(a.w_max, b.w_max);
  a.z_min = std::min(a.z_min, b.z_min);
  a.z_max = std::max(a.z_max, b.z_max);
  a.d_visc += b.d_visc;
  a.d_relax += b.d_relax;
}

std::string warning_block(const HypothesisReport& a) {
  std::string w;
  if (!a.equilibrium_on_hull) {
    w += "WARNING: equilibrium curve leaves the region on the data hull\n";
  }
  if (!a.subchar_on_hull) {
    w += "WARNING: subcharacteristic condition fails on the data hull\n";
  }
  if (a.initial_checked && !a.initial_in_region) {
    w += "WARNING: initial data start outside the region\n";
  }
  if (w.empty()) return w;
  return "# ---------------- hypothesis warnings ----------------\n" + w +
         "# ------------------------------------------------------\n";
}

// Worst relative residuals of the three eigenstructure identities over
// random box states.  Wave speeds scale like m/rho, so each residual is
// measured against the magnitude of the quantities involved; the density
// samples stay one finite-difference step above the vacuum threshold so the
// directional stencil fits.
struct IdentityWorst {
  double gap = 0.0;      // (lambda2 - lambda1) vs rho*P'
  double fd = 0.0;       // directional derivative of lambda2 along r2
  double residual = 0.0; // eigen residual ||DF r - lambda r||
};

IdentityWorst identity_scan(const ModelConfig& cfg, int n, std::uint64_t seed) {
  const StateBox& box = cfg.state_box;
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> rho_d(
      std::max(box.rho_min, kRhoFloor) + 2e-6, box.rho_max);
  std::uniform_real_distribution<double> m_d(box.m_min, box.m_max);
  IdentityWorst w;
  for (int i = 0; i < n; ++i) {
    const State s{rho_d(gen), m_d(gen)};
    const EigenData e = eigensystem(cfg, s);
    const auto pr = pressure(cfg, s.rho);
    const double speed_scale = std::max({1.0, std::abs(e.lambda1), std::abs(e.lambda2)});

    const double gap = std::abs((e.lambda2 - e.lambda1) - s.rho * pr.dp);
    w.gap = std::max(w.gap, gap / speed_scale);

    const double fd = std::abs(fd_lambda2_along_r2(cfg, s));
    w.fd = std::max(w.fd, fd / std::max(1.0, std::abs(e.lambda2)));

    const auto df = flux_jacobian(cfg, s);
    const double df_norm = std::max(std::abs(df[0][0]) + std::abs(df[0][1]),
                                    std::abs(df[1][0]) + std::abs(df[1][1]));
    const std::array<const std::array<double, 2>*, 2> rs{&e.r1, &e.r2};
    const std::array<double, 2> ls{e.lambda1, e.lambda2};
    for (int k = 0; k < 2; ++k) {
      const auto& r = *rs[k];
      const double y0 = df[0][0] * r[0] + df[0][1] * r[1] - ls[k] * r[0];
      const double y1 = df[1][0] * r[0] + df[1][1] * r[1] - ls[k] * r[1];
      const double r_norm = std::max(std::abs(r[0]), std::abs(r[1]));
      const double scale = std::max(1.0, df_norm * r_norm);
      w.residual = std::max(w.residual, std::max(std::abs(y0), std::abs(y1)) / scale);
    }
  }
  return w;
}

int run_guarded(const Scenario& sc, std::ostream& log, int (*body)(const Scenario&, std::ostream&)) {
  try {
    sc.validate();
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  try {
    return body(sc, log);
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::domain_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    log << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int simulate_body(const Scenario& sc, std::ostream& log) {
  ensure_dir(sc.output_dir);
  write_text(sc.output_dir + "/scenario.cfg", serialize_scenario(sc));

  FieldPair f = build_initial(sc);
  const Interval hull = data_hull(f);
  const HypothesisReport audit =
      audit_hypotheses(sc.model, sc.region, hull.lo, hull.hi, f.rho, f.m);
  const std::string warn = warning_block(audit);

  std::vector<double> times = sc.snapshot_times;
  if (times.empty() || times.back() < sc.solver.t_final) {
    times.push_back(sc.solver.t_final);
  }

  const std::vector<double> weight = window_weight(sc.grid);
  AdvanceOptions opt;
  opt.region = &sc.region;
  opt.weight = weight;

  write_snapshot_csv(sc.output_dir + "/snapshot_000.csv", sc.model, sc.grid, f);
  StepStats total;
  for (std::size_t k = 0; k < times.size(); ++k) {
    const StepStats st = advance(sc.model, f, sc.solver, sc.grid, times[k], opt);
    if (k == 0) {
      total = st;
    } else {
      merge_stats(total, st);
    }
    char name[40];
    std::snprintf(name, sizeof name, "/snapshot_%03zu.csv", k + 1);
    write_snapshot_csv(sc.output_dir + name, sc.model, sc.grid, f);
  }
  const double sigma = sigma_violation(sc.model, sc.region, f.rho, f.m);

  std::string report = "# run report\n";
  report += "t_final: " + fmt17(f.t) + "\n";
  std::string times_text;
  for (double t : times) {
    times_text += times_text.empty() ? fmt17(t) : "," + fmt17(t);
  }
  report += "snapshot_times: " + times_text + "\n";
  report += total.to_text();
  report += "final_sigma_violation: " + fmt17(sigma) + "\n";
  report += "# hypothesis audit\n";
  report += audit.to_text();
  report += warn;
  write_text(sc.output_dir + "/report.txt", report);

  log << warn;
  log << "simulate: " << times.size() + 1 << " snapshots, " << total.steps
      << " steps, min slack " << fmt17(total.min_slack) << ", output in "
      << sc.output_dir << '\n';
  return kExitOk;
}

int check_body(const Scenario& sc, std::ostream& log) {
  const FieldPair f = build_initial(sc);
  const Interval hull = data_hull(f);
  const HypothesisReport audit =
      audit_hypotheses(sc.model, sc.region, hull.lo, hull.hi, f.rho, f.m);
  const double bmin = boundary_condition_check(sc.model, sc.region, 100, 100, sc.seed);
  const double smin = source_inward_check(sc.model, sc.region, hull.lo, hull.hi, 2001);
  const IdentityWorst idw = identity_scan(sc.model, 1000, sc.seed);
  const bool identities_ok =
      idw.gap <= 1e-12 && idw.fd <= 1e-6 && idw.residual <= 1e-8;

  const bool pass = audit.hull_level_pass() && audit.initial_in_region &&
                    bmin > 0.0 && smin >= 0.0 && identities_ok;

  log << "# hypothesis and identity report\n";
  log << audit.to_text();
  log << "boundary_pair_min: " << fmt17(bmin) << '\n';
  log << "source_inward_min: " << fmt17(smin) << '\n';
  log << "identity_gap_worst: " << fmt17(idw.gap) << '\n';
  log << "identity_fd_worst: " << fmt17(idw.fd) << '\n';
  log << "identity_residual_worst: " << fmt17(idw.residual) << '\n';
  log << "hull_level: " << (pass ? "pass" : "fail") << '\n';
  return pass ? kExitOk : kExitValidation;
}

std::string sweep_row(const Scenario& pt, std::span<const double> weight,
                      const std::string& dir, std::ostream& log) {
  const double tau = pt.solver.tau;
  const double eps = pt.solver.epsilon;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  double l1 = nan, gap_l2 = nan, d_visc = nan, d_relax = nan, sigma = nan;
  try {
    ensure_dir(dir);
    FieldPair f = build_initial(pt);
    const std::vector<double> rho0 = f.rho;

    AdvanceOptions opt;
    opt.region = &pt.region;
    opt.weight = weight;
    const StepStats st = advance(pt.model, f, pt.solver, pt.grid, pt.solver.t_final, opt);
    write_snapshot_csv(dir + "/viscous_final.csv", pt.model, pt.grid, f);

    const ScalarFlux flux = make_scalar_flux(pt.model, pt.model.state_box.rho_min,
                                             pt.model.state_box.rho_max);
    ScalarField u;
    u.rho = rho0;
    advance_scalar(flux, u, pt.grid, pt.solver.t_final);
    write_density_csv(dir + "/scalar_final.csv", pt.grid, u.rho);

    l1 = l1_distance(f.rho, u.rho, pt.grid.dx());
    gap_l2 = equilibrium_gap(pt.model, f.rho, f.m, pt.grid.dx()).l2;
    d_visc = st.d_visc;
    d_relax = st.d_relax;
    sigma = st.min_slack;
  } catch (const std::exception& e) {
    log << "sweep point tau=" << fmt17(tau) << " failed: " << e.what() << '\n';
  }
  return fmt17(tau) + "," + fmt17(eps) + "," + fmt17(l1) + "," + fmt17(gap_l2) +
         "," + fmt17(d_visc) + "," + fmt17(d_relax) + "," + fmt17(sigma) + "\n";
}

int riemann_table_body(const Scenario& sc, std::ostream& log) {
  std::vector<std::pair<std::string, State>> states;
  const auto add_with_eq = [&](const std::string& label, double rho,
                               const std::optional<double>& m) {
    const double r = rho + sc.floor_shift;
    const double heq = equilibrium_momentum(sc.model, r).h;
    states.emplace_back(label, State{r, m ? *m : heq});
    states.emplace_back(label + "_eq", State{r, heq});
  };
  if (sc.profile == "uniform") {
    add_with_eq("uniform", sc.rho_uniform, sc.m_uniform);
  } else if (sc.profile == "riemann") {
    add_with_eq("left", sc.rho_left, sc.m_left);
    add_with_eq("right", sc.rho_right, sc.m_right);
  } else {
    add_with_eq("base", sc.rho_base, sc.m_bump);
    add_with_eq("peak", sc.rho_base + sc.bump_amplitude, sc.m_bump);
  }
  states.emplace_back("corner", corner(sc.model, sc.region));

  log << "label,rho,m,W,Z,lambda1,lambda2,subchar_margin,region_slack\n";
  for (const auto& [label, s] : states) {
    std::string w = "nan", z = "nan", l1 = "nan", l2 = "nan";
    if (s.rho >= kRhoFloor) {
      const InvariantPair wz = riemann_invariants(sc.model, s);
      const EigenData e = eigensystem(sc.model, s);
      w = fmt17(wz.w);
      z = fmt17(wz.z);
      l1 = fmt17(e.lambda1);
      l2 = fmt17(e.lambda2);
    }
    const double margin = subcharacteristic_margin(sc.model, s.rho).margin;
    const ContainsResult c = contains(sc.model, sc.region, s);
    const double slack = std::min({c.slack_w, c.slack_z, c.slack_rho});
    log << label << ',' << fmt17(s.rho) << ',' << fmt17(s.m) << ',' << w << ','
        << z << ',' << l1 << ',' << l2 << ',' << fmt17(margin) << ','
        << fmt17(slack) << '\n';
  }
  return kExitOk;
}

} // namespace

int cmd_simulate(const Scenario& sc, std::ostream& log) {
  return run_guarded(sc, log, simulate_body);
}

int cmd_check(const Scenario& sc, std::ostream& log) {
  return run_guarded(sc, log, check_body);
}

int cmd_sweep(const Scenario& sc, const std::vector<double>& taus, double exponent,
              std::ostream& log) {
  try {
    sc.validate();
    if (taus.empty()) {
      throw std::invalid_argument("sweep needs at least one tau");
    }
    for (std::size_t i = 0; i < taus.size(); ++i) {
      if (!(taus[i] > 0.0) || !std::isfinite(taus[i])) {
        throw std::invalid_argument("tau values must be finite and positive");
      }
      if (i > 0 && !(taus[i] < taus[i - 1])) {
        throw std::invalid_argument("tau list must be strictly decreasing");
      }
    }
    if (!(exponent > 0.0) || !(exponent <= 1.0)) {
      throw std::invalid_argument("coupling exponent must lie in (0, 1]");
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    ensure_dir(sc.output_dir);
    const std::vector<double> weight = window_weight(sc.grid);
    std::string csv = "tau,epsilon,l1_to_oracle,gap_l2,d_visc,d_relax,sigma_violation\n";
    for (double tau : taus) {
      Scenario pt = sc;
      pt.solver.tau = tau;
      pt.solver.epsilon = std::pow(tau, exponent);
      // sweeps start on the equilibrium curve to avoid initial-layer noise
      pt.m_uniform.reset();
      pt.m_left.reset();
      pt.m_right.reset();
      pt.m_bump.reset();
      char sub[64];
      std::snprintf(sub, sizeof sub, "%s/tau_%.6g", sc.output_dir.c_str(), tau);
      csv += sweep_row(pt, weight, sub, log);
    }
    write_text(sc.output_dir + "/sweep.csv", csv);
    log << csv;
    return kExitOk;
  } catch (const std::invalid_argument& e) {
    log << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    log << "runtime error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cmd_riemann_table(const Scenario& sc, std::ostream& log) {
  return run_guarded(sc, log, riemann_table_body);
}

} // namespace trelax
