#include "trelax/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace trelax {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line_no, const std::string& what) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "scenario line %d: ", line_no);
  throw std::invalid_argument(buf + what);
}

double parse_num(const std::string& v, int line_no, const std::string& key) {
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(x)) {
    fail(line_no, "bad number for '" + key + "': " + v);
  }
  return x;
}

int parse_cells(const std::string& v, int line_no) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size() || x < 1 || x > 100000000) {
    fail(line_no, "bad cell count: " + v);
  }
  return static_cast<int>(x);
}

std::uint64_t parse_seed(const std::string& v, int line_no) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) fail(line_no, "bad seed: " + v);
  return x;
}

// momentum keys accept a number or the sentinel "eq"
std::optional<double> parse_m(const std::string& v, int line_no, const std::string& key) {
  if (v == "eq") return std::nullopt;
  return parse_num(v, line_no, key);
}

std::vector<double> parse_times(const std::string& v, int line_no) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(parse_num(trim(item), line_no, "snapshot_times"));
  }
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_m(const std::optional<double>& m) { return m ? fmt(*m) : "eq"; }

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string(name) + " must be finite and >= 0");
  }
}

} // namespace

void Scenario::validate() const {
  model.validate();
  region.validate();
  grid.validate();
  solver.validate();
  if (profile != "uniform" && profile != "riemann" && profile != "smooth-bump") {
    throw std::invalid_argument("profile must be uniform, riemann or smooth-bump");
  }
  require_nonnegative(rho_uniform, "rho_uniform");
  require_nonnegative(rho_left, "rho_left");
  require_nonnegative(rho_right, "rho_right");
  require_nonnegative(rho_base, "rho_base");
  if (!std::isfinite(bump_amplitude) || !std::isfinite(jump_x) ||
      !std::isfinite(floor_shift)) {
    throw std::invalid_argument("profile parameters must be finite");
  }
  for (const auto& m : {m_uniform, m_left, m_right, m_bump}) {
    if (m && !std::isfinite(*m)) {
      throw std::invalid_argument("momentum values must be finite");
    }
  }
  double prev = 0.0;
  for (double t : snapshot_times) {
    if (!(t > prev) || !(t <= solver.t_final)) {
      throw std::invalid_argument(
          "snapshot_times must be strictly increasing in (0, t_final]");
    }
    prev = t;
  }
  if (output_dir.empty()) throw std::invalid_argument("output_dir must be set");
}

Scenario parse_scenario_text(const std::string& text) {
  Scenario sc;
  std::set<std::string> seen;
  std::stringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key=value: " + line);
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key");
    if (!seen.insert(key).second) fail(line_no, "duplicate key '" + key + "'");

    if (key == "gamma") sc.model.gamma = parse_num(val, line_no, key);
    else if (key == "kappa") sc.model.kappa = parse_num(val, line_no, key);
    else if (key == "a") sc.model.a = parse_num(val, line_no, key);
    else if (key == "b") sc.model.b = parse_num(val, line_no, key);
    else if (key == "c1") sc.region.c1 = parse_num(val, line_no, key);
    else if (key == "c2") sc.region.c2 = parse_num(val, line_no, key);
    else if (key == "n_cells") sc.grid.n = parse_cells(val, line_no);
    else if (key == "x_left") sc.grid.x_left = parse_num(val, line_no, key);
    else if (key == "x_right") sc.grid.x_right = parse_num(val, line_no, key);
    else if (key == "bc") {
      try {
        sc.grid.bc = bc_from_string(val);
      } catch (const std::exception& e) {
        fail(line_no, e.what());
      }
    } else if (key == "epsilon") sc.solver.epsilon = parse_num(val, line_no, key);
    else if (key == "tau") sc.solver.tau = parse_num(val, line_no, key);
    else if (key == "cfl") sc.solver.cfl = parse_num(val, line_no, key);
    else if (key == "rho_floor") sc.solver.rho_floor = parse_num(val, line_no, key);
    else if (key == "t_final") sc.solver.t_final = parse_num(val, line_no, key);
    else if (key == "profile") sc.profile = val;
    else if (key == "rho_uniform") sc.rho_uniform = parse_num(val, line_no, key);
    else if (key == "m_uniform") sc.m_uniform = parse_m(val, line_no, key);
    else if (key == "rho_left") sc.rho_left = parse_num(val, line_no, key);
    else if (key == "rho_right") sc.rho_right = parse_num(val, line_no, key);
    else if (key == "m_left") sc.m_left = parse_m(val, line_no, key);
    else if (key == "m_right") sc.m_right = parse_m(val, line_no, key);
    else if (key == "jump_x") sc.jump_x = parse_num(val, line_no, key);
    else if (key == "rho_base") sc.rho_base = parse_num(val, line_no, key);
    else if (key == "bump_amplitude") sc.bump_amplitude = parse_num(val, line_no, key);
    else if (key == "m_bump") sc.m_bump = parse_m(val, line_no, key);
    else if (key == "floor_shift") sc.floor_shift = parse_num(val, line_no, key);
    else if (key == "snapshot_times") sc.snapshot_times = parse_times(val, line_no);
    else if (key == "output_dir") sc.output_dir = val;
    else if (key == "seed") sc.seed = parse_seed(val, line_no);
    else fail(line_no, "unknown key '" + key + "'");
  }
  sc.validate();
  return sc;
}

Scenario parse_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string serialize_scenario(const Scenario& sc) {
  std::string out;
  const auto kv = [&](const char* k, const std::string& v) {
    out += k;
    out += '=';
    out += v;
    out += '\n';
  };
  out += "# model\n";
  kv("gamma", fmt(sc.model.gamma));
  kv("kappa", fmt(sc.model.kappa));
  kv("a", fmt(sc.model.a));
  kv("b", fmt(sc.model.b));
  out += "# region\n";
  kv("c1", fmt(sc.region.c1));
  kv("c2", fmt(sc.region.c2));
  out += "# grid\n";
  char cells[24];
  std::snprintf(cells, sizeof cells, "%d", sc.grid.n);
  kv("n_cells", cells);
  kv("x_left", fmt(sc.grid.x_left));
  kv("x_right", fmt(sc.grid.x_right));
  kv("bc", to_string(sc.grid.bc));
  out += "# solver\n";
  kv("epsilon", fmt(sc.solver.epsilon));
  kv("tau", fmt(sc.solver.tau));
  kv("cfl", fmt(sc.solver.cfl));
  kv("rho_floor", fmt(sc.solver.rho_floor));
  kv("t_final", fmt(sc.solver.t_final));
  out += "# initial data\n";
  kv("profile", sc.profile);
  kv("rho_uniform", fmt(sc.rho_uniform));
  kv("m_uniform", fmt_m(sc.m_uniform));
  kv("rho_left", fmt(sc.rho_left));
  kv("rho_right", fmt(sc.rho_right));
  kv("m_left", fmt_m(sc.m_left));
  kv("m_right", fmt_m(sc.m_right));
  kv("jump_x", fmt(sc.jump_x));
  kv("rho_base", fmt(sc.rho_base));
  kv("bump_amplitude", fmt(sc.bump_amplitude));
  kv("m_bump", fmt_m(sc.m_bump));
  kv("floor_shift", fmt(sc.floor_shift));
  out += "# output\n";
  std::string times;
  for (std::size_t i = 0; i < sc.snapshot_times.size(); ++i) {
    if (i) times += ',';
    times += fmt(sc.snapshot_times[i]);
  }
  kv("snapshot_times", times);
  kv("output_dir", sc.output_dir);
  char seed[24];
  std::snprintf(seed, sizeof seed, "%llu", static_cast<unsigned long long>(sc.seed));
  kv("seed", seed);
  return out;
}

FieldPair build_initial(const Scenario& sc) {
  sc.validate();
  const auto rho_raw = [&sc](double x) -> double {
    if (sc.profile == "uniform") return sc.rho_uniform;
    if (sc.profile == "riemann") return x < sc.jump_x ? sc.rho_left : sc.rho_right;
    const double L = sc.grid.x_right - sc.grid.x_left;
    const double s = std::sin(std::numbers::pi * (x - sc.grid.x_left) / L);
    return sc.rho_base + sc.bump_amplitude * s * s;
  };
  const auto m_raw = [&sc, &rho_raw](double x) -> double {
    std::optional<double> mv;
    if (sc.profile == "uniform") mv = sc.m_uniform;
    else if (sc.profile == "riemann") mv = x < sc.jump_x ? sc.m_left : sc.m_right;
    else mv = sc.m_bump;
    if (mv) return *mv;
    return equilibrium_momentum(sc.model, rho_raw(x) + sc.floor_shift).h;
  };
  return apply_initial_data(sc.grid, rho_raw, m_raw, sc.floor_shift,
                            sc.solver.rho_floor);
}

Interval data_hull(const FieldPair& f) {
  if (f.rho.empty()) throw std::invalid_argument("data_hull: empty field");
  const auto [lo_it, hi_it] = std::minmax_element(f.rho.begin(), f.rho.end());
  double lo = *lo_it, hi = *hi_it;
  if (hi - lo < 1e-9) {
    lo = std::max(0.0, lo - 1e-9);
    hi += 1e-9;
  }
  return {lo, hi};
}

} // namespace trelax
