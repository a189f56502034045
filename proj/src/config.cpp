#include "sle/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "sle/errors.hpp"
#include "sle/liouville.hpp"
#include "sle/potential.hpp"

namespace sle {
namespace {

using json = nlohmann::ordered_json;

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad(const std::string& msg) { fail(ErrorCode::invalid, msg); }

const json& need(const json& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) bad("missing required field \"" + key + "\"");
  return *it;
}

double need_num(const json& j, const std::string& key) {
  const json& v = need(j, key);
  if (!v.is_number()) bad("field \"" + key + "\" must be a number");
  return v.get<double>();
}

double opt_num(const json& j, const std::string& key, double def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number()) bad("field \"" + key + "\" must be a number");
  return it->get<double>();
}

int opt_int(const json& j, const std::string& key, int def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_number_integer()) bad("field \"" + key + "\" must be an integer");
  return it->get<int>();
}

std::string opt_str(const json& j, const std::string& key,
                    const std::string& def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_string()) bad("field \"" + key + "\" must be a string");
  return it->get<std::string>();
}

bool opt_bool(const json& j, const std::string& key, bool def) {
  auto it = j.find(key);
  if (it == j.end()) return def;
  if (!it->is_boolean()) bad("field \"" + key + "\" must be a boolean");
  return it->get<bool>();
}

std::vector<double> need_num_list(const json& j, const std::string& key) {
  const json& v = need(j, key);
  if (!v.is_array() || v.empty())
    bad("field \"" + key + "\" must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad("field \"" + key + "\" must contain only numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key()))
      bad("unknown field \"" + it.key() + "\"" +
          (where.empty() ? "" : " in " + where));
  }
}

// Default mode count for the mesh rule dx = 2 pi h / 16 on [a, b].
int default_modes(double h, double a, double b) {
  int m = static_cast<int>(std::llround(8.0 * (b - a) / (kPi * h)));
  if (m % 2 != 0) ++m;
  return std::max(m, 4);
}

// Number of time steps covering [0, T]: full steps of dt plus one shortened
// step when T is not an integer multiple of dt.
int step_count(double t_final, double dt) {
  int n = static_cast<int>(std::floor(t_final / dt + 1e-12));
  double rem = t_final - n * dt;
  if (rem > 1e-12 * std::max(1.0, t_final)) ++n;
  return n;
}

const std::set<std::string> kRunKeys = {
    "preset",    "kind",        "h",           "dt",
    "T",         "splitting",   "transport_order", "x_grid",
    "phase_grid", "potential",  "psi_init",    "mu_init",
    "mu_init_y0", "mu_init_eta0", "cadence",   "profiles",
    "strict_cfl", "derived"};

const std::set<std::string> kExperimentExtraKeys = {
    "h_values", "dt_values", "reference_dt",
    "limit_nx", "limit_nxi", "limit_xi_max", "limit_dt"};

bool is_h_sweep(const std::string& kind) {
  return kind == "dt_independence" || kind == "error_vs_h" ||
         kind == "ap_study";
}

// Parses the shared run-shaped fields. For h sweeps h comes from h_values and
// a fixed x_grid.M would silently misresolve the mesh rule, so it is rejected.
RunConfig parse_run_fields(const json& j, bool h_required, bool dt_required,
                           bool allow_fixed_modes) {
  RunConfig cfg;
  cfg.h = h_required ? need_num(j, "h") : opt_num(j, "h", 0.0);
  if (h_required && cfg.h <= 0.0) bad("field \"h\" must be positive");
  cfg.dt = dt_required ? need_num(j, "dt") : opt_num(j, "dt", 0.0);
  if (dt_required && cfg.dt <= 0.0) bad("field \"dt\" must be positive");
  cfg.t_final = need_num(j, "T");
  if (cfg.t_final <= 0.0) bad("field \"T\" must be positive");

  std::string split = opt_str(j, "splitting", "lie");
  if (split == "lie")
    cfg.splitting = Splitting::lie;
  else if (split == "strang")
    cfg.splitting = Splitting::strang;
  else
    bad("field \"splitting\" must be \"lie\" or \"strang\"");

  std::string order = opt_str(j, "transport_order", "euler");
  if (order == "euler")
    cfg.transport_order = TransportOrder::euler;
  else if (order == "heun")
    cfg.transport_order = TransportOrder::heun;
  else
    bad("field \"transport_order\" must be \"euler\" or \"heun\"");

  double a = -kPi, b = kPi;
  int modes = 0;
  if (auto it = j.find("x_grid"); it != j.end()) {
    if (!it->is_object()) bad("field \"x_grid\" must be an object");
    check_keys(*it, {"a", "b", "M"}, "\"x_grid\"");
    a = opt_num(*it, "a", a);
    b = opt_num(*it, "b", b);
    if (!(a < b)) bad("field \"x_grid\" requires a < b");
    if (it->contains("M")) {
      if (!allow_fixed_modes)
        bad("field \"x_grid.M\" cannot be fixed in an h sweep");
      modes = opt_int(*it, "M", 0);
      if (modes <= 0 || modes % 2 != 0)
        bad("field \"x_grid.M\" must be a positive even integer");
    }
  }
  if (modes == 0 && cfg.h > 0.0) modes = default_modes(cfg.h, a, b);
  if (modes > 0) cfg.xgrid = make_xgrid(a, b, modes);
  else cfg.xgrid = XGrid{a, b, 0};  // filled per run in h sweeps

  double y_lo = -2.0 * kPi, y_hi = 2.0 * kPi;
  double e_lo = -2.0 * kPi, e_hi = 2.0 * kPi;
  int ny = 128, neta = 128;
  if (auto it = j.find("phase_grid"); it != j.end()) {
    if (!it->is_object()) bad("field \"phase_grid\" must be an object");
    check_keys(*it, {"y_lo", "y_hi", "J", "eta_lo", "eta_hi", "K"},
               "\"phase_grid\"");
    y_lo = opt_num(*it, "y_lo", y_lo);
    y_hi = opt_num(*it, "y_hi", y_hi);
    e_lo = opt_num(*it, "eta_lo", e_lo);
    e_hi = opt_num(*it, "eta_hi", e_hi);
    ny = opt_int(*it, "J", ny);
    neta = opt_int(*it, "K", neta);
    if (ny < 1 || neta < 1)
      bad("fields \"phase_grid.J\" and \"phase_grid.K\" must be positive");
  }
  cfg.pgrid = make_phase_grid(y_lo, y_hi, ny, e_lo, e_hi, neta);

  cfg.potential = opt_str(j, "potential", "quadratic_coupling");
  if (cfg.potential != "quadratic_coupling")
    bad("field \"potential\" has unknown value \"" + cfg.potential + "\"");

  cfg.psi_init = opt_str(j, "psi_init", "wkb_cosh");
  if (cfg.psi_init != "wkb_cosh" && cfg.psi_init != "wkb_sine")
    bad("field \"psi_init\" must be \"wkb_cosh\" or \"wkb_sine\"");

  cfg.mu_init = opt_str(j, "mu_init", "bump");
  if (cfg.mu_init != "bump" && cfg.mu_init != "point_mass")
    bad("field \"mu_init\" must be \"bump\" or \"point_mass\"");
  cfg.mu_init_y0 = opt_num(j, "mu_init_y0", 1.0);
  cfg.mu_init_eta0 = opt_num(j, "mu_init_eta0", 0.0);

  cfg.cadence = opt_int(j, "cadence", 10);
  if (cfg.cadence < 1) bad("field \"cadence\" must be at least 1");

  cfg.profiles = opt_str(j, "profiles", "final");
  if (cfg.profiles != "none" && cfg.profiles != "final" &&
      cfg.profiles != "checkpoints")
    bad("field \"profiles\" must be \"none\", \"final\" or \"checkpoints\"");

  cfg.strict_cfl = opt_bool(j, "strict_cfl", false);
  return cfg;
}

json grid_json(const XGrid& g) {
  json out{{"a", g.a}, {"b", g.b}};
  if (g.m > 0) out["M"] = g.m;  // omitted in h sweeps, where M follows h
  return out;
}

json phase_json(const PhaseGrid& g) {
  return json{{"y_lo", g.y_lo}, {"y_hi", g.y_hi}, {"J", g.ny},
              {"eta_lo", g.eta_lo}, {"eta_hi", g.eta_hi}, {"K", g.neta}};
}

void put_common(json& out, const RunConfig& cfg) {
  out["splitting"] = cfg.splitting == Splitting::lie ? "lie" : "strang";
  out["transport_order"] =
      cfg.transport_order == TransportOrder::euler ? "euler" : "heun";
  out["x_grid"] = grid_json(cfg.xgrid);
  out["phase_grid"] = phase_json(cfg.pgrid);
  out["potential"] = cfg.potential;
  out["psi_init"] = cfg.psi_init;
  out["mu_init"] = cfg.mu_init;
  if (cfg.mu_init == "point_mass") {
    out["mu_init_y0"] = cfg.mu_init_y0;
    out["mu_init_eta0"] = cfg.mu_init_eta0;
  }
  out["cadence"] = cfg.cadence;
  out["profiles"] = cfg.profiles;
  out["strict_cfl"] = cfg.strict_cfl;
}

json run_json(const RunConfig& cfg) {
  json out;
  out["kind"] = "single_run";
  out["h"] = cfg.h;
  out["dt"] = cfg.dt;
  out["T"] = cfg.t_final;
  put_common(out, cfg);
  out["derived"] = json{{"dx", cfg.xgrid.dx()},
                        {"dy", cfg.pgrid.dy()},
                        {"deta", cfg.pgrid.deta()},
                        {"steps", step_count(cfg.t_final, cfg.dt)}};
  return out;
}

json experiment_json(const ExperimentSpec& spec) {
  json out;
  out["kind"] = spec.kind;
  if (!spec.h_values.empty()) out["h_values"] = spec.h_values;
  else out["h"] = spec.base.h;
  if (!spec.dt_values.empty()) out["dt_values"] = spec.dt_values;
  else out["dt"] = spec.base.dt;
  out["T"] = spec.base.t_final;
  if (spec.kind == "time_convergence") out["reference_dt"] = spec.reference_dt;
  put_common(out, spec.base);
  if (spec.kind == "ap_study") {
    out["limit_nx"] = spec.limit_nx;
    out["limit_nxi"] = spec.limit_nxi;
    out["limit_xi_max"] = spec.limit_xi_max;
    out["limit_dt"] = spec.limit_dt;
  }
  json derived;
  if (!spec.h_values.empty())
    derived["modes_rule"] = "dx = 2 pi h / 16";
  if (spec.kind == "dt_independence" || spec.kind == "error_vs_h")
    derived["reference_rule"] = "dt_ref = h / 10";
  if (spec.kind == "time_convergence")
    derived["reference_h"] = spec.base.h;
  if (!derived.empty()) out["derived"] = derived;
  return out;
}

// Largest stable step for the phase-space transport on this configuration,
// used to pick an automatic dt for point-mass cross-check runs.
double auto_transport_dt(const RunConfig& cfg) {
  Box box{cfg.xgrid.a, cfg.xgrid.b, cfg.pgrid.y_lo, cfg.pgrid.y_hi};
  auto pot = make_quadratic_coupling(box);
  double max_dt = cfl_max_dt(cfg.pgrid, pot.sup_dv_dy);
  if (!std::isfinite(max_dt)) return cfg.t_final;
  int n = std::max(1, static_cast<int>(std::ceil(cfg.t_final /
                                                 (0.9 * max_dt) - 1e-12)));
  return cfg.t_final / n;
}

ExperimentSpec parse_experiment(const json& j, const std::string& kind) {
  ExperimentSpec spec;
  spec.kind = kind;
  const bool sweep_h = is_h_sweep(kind);
  const bool fixed_h = kind == "time_convergence" || kind == "ode_crosscheck";
  const bool dt_required = kind != "time_convergence" && kind != "ode_crosscheck";

  spec.base = parse_run_fields(j, fixed_h, dt_required, !sweep_h);

  if (sweep_h) {
    spec.h_values = need_num_list(j, "h_values");
    for (double h : spec.h_values)
      if (h <= 0.0) bad("field \"h_values\" must contain positive numbers");
    spec.base.h = spec.h_values.front();
  }
  if (kind == "time_convergence") {
    spec.dt_values = need_num_list(j, "dt_values");
    for (double dt : spec.dt_values)
      if (dt <= 0.0) bad("field \"dt_values\" must contain positive numbers");
    spec.reference_dt = need_num(j, "reference_dt");
    if (spec.reference_dt <= 0.0) bad("field \"reference_dt\" must be positive");
    double min_dt = *std::min_element(spec.dt_values.begin(),
                                      spec.dt_values.end());
    if (!(spec.reference_dt < min_dt))
      bad("field \"reference_dt\" must be smaller than every entry of "
          "\"dt_values\"");
    spec.base.dt = spec.dt_values.front();
  }
  if (kind == "ap_study") {
    spec.limit_nx = opt_int(j, "limit_nx", 128);
    spec.limit_nxi = opt_int(j, "limit_nxi", 128);
    if (spec.limit_nx < 2 || spec.limit_nxi < 2)
      bad("fields \"limit_nx\" and \"limit_nxi\" must be at least 2");
    if (spec.limit_nxi % 2 != 0) bad("field \"limit_nxi\" must be even");
    spec.limit_xi_max = opt_num(j, "limit_xi_max", 4.0);
    if (spec.limit_xi_max <= 0.0) bad("field \"limit_xi_max\" must be positive");
    spec.limit_dt = opt_num(j, "limit_dt", 0.0);
    if (spec.limit_dt < 0.0) bad("field \"limit_dt\" must be non-negative");
  }
  if (kind == "ode_crosscheck") {
    if (spec.base.mu_init != "point_mass")
      bad("field \"mu_init\" must be \"point_mass\" for ode_crosscheck");
    if (spec.base.dt <= 0.0) spec.base.dt = auto_transport_dt(spec.base);
  }
  return spec;
}

json preset_json(const std::string& name, bool paper_exact) {
  json p;
  if (name == "example1") {
    p["kind"] = "dt_independence";
    p["h_values"] = json::array({1.0 / 256, 1.0 / 1024});
    if (paper_exact) p["h_values"].push_back(1.0 / 4096);
    p["dt"] = 0.01;
    p["T"] = 0.5;
    p["psi_init"] = "wkb_cosh";
    p["mu_init"] = "bump";
  } else if (name == "example2") {
    p["kind"] = "error_vs_h";
    p["h_values"] = json::array(
        {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024, 1.0 / 2048});
    p["dt"] = 0.01;
    p["T"] = 0.4;
    p["psi_init"] = "wkb_sine";
    p["mu_init"] = "bump";
  } else if (name == "example3") {
    p["kind"] = "time_convergence";
    p["h"] = paper_exact ? 1.0 / 8192 : 1.0 / 1024;
    json dts = json::array();
    for (int n = 32; n <= 1024; n *= 2) dts.push_back(0.4 / n);
    p["dt_values"] = dts;
    p["reference_dt"] = paper_exact ? 0.4 / 81920 : 0.4 / 8192;
    p["T"] = 0.4;
    p["psi_init"] = "wkb_sine";
    p["mu_init"] = "bump";
  } else if (name == "ap" || name == "ap_study") {
    p["kind"] = "ap_study";
    p["h_values"] =
        json::array({1.0 / 128, 1.0 / 256, 1.0 / 512, 1.0 / 1024});
    p["dt"] = 0.01;
    p["T"] = 0.5;
    p["psi_init"] = "wkb_cosh";
    p["mu_init"] = "bump";
    p["limit_nx"] = 4096;
    p["limit_nxi"] = 512;
    p["limit_xi_max"] = 2.0;
  } else if (name == "ode" || name == "ode_crosscheck") {
    p["kind"] = "ode_crosscheck";
    p["h"] = 1.0 / 64;
    p["T"] = 0.5;
    p["psi_init"] = "wkb_cosh";
    p["mu_init"] = "point_mass";
    p["mu_init_y0"] = 1.0;
    p["mu_init_eta0"] = 0.0;
    p["phase_grid"] = json{{"J", 64}, {"K", 64}};
  } else {
    bad("unknown preset \"" + name + "\"");
  }
  return p;
}

LoadedConfig load_json(json j, const LoadOptions& opts) {
  if (!j.is_object()) bad("config root must be a JSON object");

  if (auto it = j.find("preset"); it != j.end()) {
    if (!it->is_string()) bad("field \"preset\" must be a string");
    json base = preset_json(it->get<std::string>(), opts.paper_exact);
    for (auto u = j.begin(); u != j.end(); ++u) {
      if (u.key() == "preset") continue;
      base[u.key()] = u.value();
    }
    j = std::move(base);
  }

  std::string kind = opt_str(j, "kind", "single_run");

  LoadedConfig out;
  if (kind == "single_run") {
    check_keys(j, kRunKeys, "");
    out.run = parse_run_fields(j, true, true, true);
    out.resolved = resolved_json(*out.run);
  } else if (kind == "dt_independence" || kind == "error_vs_h" ||
             kind == "time_convergence" || kind == "ap_study" ||
             kind == "ode_crosscheck") {
    std::set<std::string> allowed = kRunKeys;
    allowed.insert(kExperimentExtraKeys.begin(), kExperimentExtraKeys.end());
    check_keys(j, allowed, "");
    out.experiment = parse_experiment(j, kind);
    out.resolved = resolved_json(*out.experiment);
  } else {
    bad("field \"kind\" has unknown value \"" + kind + "\"");
  }
  return out;
}

}  // namespace

LoadedConfig load_config_text(const std::string& text,
                              const LoadOptions& opts) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::parse, std::string("config parse error: ") + e.what());
  }
  return load_json(std::move(j), opts);
}

LoadedConfig load_config_file(const std::string& path,
                              const LoadOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io, "cannot open config file \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::io, "cannot read config file \"" + path + "\"");
  return load_config_text(buf.str(), opts);
}

std::string resolved_json(const RunConfig& cfg) {
  return run_json(cfg).dump(2) + "\n";
}

RunConfig with_scale(const RunConfig& base, double h) {
  RunConfig cfg = base;
  cfg.h = h;
  cfg.xgrid =
      make_xgrid(base.xgrid.a, base.xgrid.b,
                 default_modes(h, base.xgrid.a, base.xgrid.b));
  return cfg;
}

int time_step_count(double t_final, double dt) { return step_count(t_final, dt); }

std::string resolved_json(const ExperimentSpec& spec) {
  return experiment_json(spec).dump(2) + "\n";
}

}  // namespace sle
