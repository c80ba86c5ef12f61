#include "pn/commands.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <json.hpp>

#include "pn/acceptance.hpp"
#include "pn/dynamics.hpp"
#include "pn/elastic.hpp"
#include "pn/energy.hpp"
#include "pn/io.hpp"
#include "pn/static_solver.hpp"

namespace pn {
namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "1.0.0";

struct Context {
  const RunConfig& cfg;
  fs::path dir;
  PhysParams params;
  Grid1D grid;
  Potential potential;
  json files = json::array();
};

Potential make_potential(const RunConfig& cfg, const PhysParams& params) {
  if (cfg.potential == "frenkel") return Potential::frenkel(params);
  return Potential::load_table(params, cfg.potential.substr(6));
}

void put(Context& ctx, const std::string& name, const std::string& content) {
  write_text(ctx.dir / name, content);
  ctx.files.push_back(name);
}

json config_json(const RunConfig& cfg) {
  json j = json::object();
  std::istringstream in(echo(cfg));
  std::string line;
  while (std::getline(in, line)) {
    const auto eq = line.find(" = ");
    j[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return j;
}

void write_manifest(Context& ctx, const std::string& command, double seconds, const json& extra = json::object()) {
  json m;
  m["command"] = command;
  m["config_hash"] = config_hash(ctx.cfg);
  m["versions"] = {{"pnsolve", kVersion}, {"config_format", ctx.cfg.format_version}};
  m["timings"] = {{"wall_seconds", seconds}};
  m["config"] = config_json(ctx.cfg);
  m["files"] = ctx.files;
  for (auto& [k, v] : extra.items()) m[k] = v;
  write_text(ctx.dir / "manifest.json", m.dump(2) + "\n");
}

Profile initial_profile(const Context& ctx) {
  if (ctx.cfg.init == "analytic") return Profile::analytic(ctx.grid, ctx.params);
  std::vector<double> u(ctx.grid.size());
  for (std::size_t j = 0; j < u.size(); ++j)
    u[j] = -ctx.params.b() / 4.0 * std::tanh(ctx.grid.node(j) / ctx.params.zeta());
  return Profile::from_samples(ctx.grid, ctx.params, u, ctx.params.zeta());
}

SolveOptions solve_options(const RunConfig& cfg) {
  SolveOptions o;
  o.dt0 = cfg.solve_dt0;
  o.res_tol = cfg.solve_res_tol;
  o.newton_tol = cfg.solve_res_tol;
  o.max_iters = static_cast<int>(cfg.solve_max_iters);
  o.newton = cfg.solve_newton;
  return o;
}

// Static profile: reuse profile_in when given, otherwise solve.
Profile static_profile(const Context& ctx, json* summary) {
  if (!ctx.cfg.profile_in.empty()) {
    Profile p = read_profile_csv(ctx.cfg.profile_in, ctx.params);
    if (summary) (*summary)["profile_source"] = ctx.cfg.profile_in;
    return p;
  }
  auto r = solve_static(initial_profile(ctx), ctx.potential, solve_options(ctx.cfg));
  if (summary) {
    (*summary)["profile_source"] = "solve";
    (*summary)["flow_steps"] = r.flow_steps;
    (*summary)["newton_steps"] = r.newton_steps;
    (*summary)["linear_iterations"] = r.linear_iterations;
    (*summary)["warnings"] = r.warnings;
  }
  return r.profile;
}

void solve_static_cmd(Context& ctx, json& extra) {
  json summary;
  Profile p = static_profile(ctx, &summary);
  const auto res = residual(p, ctx.potential);
  const auto bd = burgers_density(p);
  write_profile_csv(ctx.dir / "profile.csv", p, bd.rho, res.samples);
  ctx.files.push_back("profile.csv");
  const auto c = center_profile(p);
  const auto dc = decay_coefficients(c.centered);
  summary["residual_linf"] = res.linf;
  summary["residual_l2"] = res.l2;
  summary["shift"] = c.shift;
  summary["decay_c_plus"] = dc.c_plus;
  summary["decay_c_minus"] = dc.c_minus;
  summary["burgers_total"] = bd.total;
  summary["monotone"] = is_monotone_decreasing(p.u1());
  summary["potential"] = ctx.potential.name();
  put(ctx, "summary.json", summary.dump(2) + "\n");
  extra["summary"] = "summary.json";
}

void extend_cmd(Context& ctx, json& extra) {
  Profile p = static_profile(ctx, nullptr);
  const double z = ctx.params.zeta();
  const auto yl = YLevels::geometric(ctx.cfg.extend_y_min_over_zeta * z, ctx.cfg.extend_y_max_over_zeta * z,
                                     static_cast<std::size_t>(ctx.cfg.extend_levels), true);
  const auto hp = extend_to_half_planes(p, yl);
  const auto sf = stress_field(p, yl);
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < ctx.grid.size(); ++j)
    if (std::abs(ctx.grid.node(j)) <= ctx.cfg.extend_x_max_over_zeta * z) cols.push_back(j);

  auto emit = [&](const std::string& name, const std::string& unit, const Field2D& up, const Field2D& down) {
    std::string s = "# " + name + " [" + unit + "]; x, y [length]\nx,y,value\n";
    for (std::size_t i = yl.values.size(); i-- > 0;)
      for (std::size_t j : cols)
        s += format_number(ctx.grid.node(j)) + "," + format_number(-yl.values[i]) + "," + format_number(down(i, j)) + "\n";
    for (std::size_t i = 0; i < yl.values.size(); ++i)
      for (std::size_t j : cols)
        s += format_number(ctx.grid.node(j)) + "," + format_number(yl.values[i]) + "," + format_number(up(i, j)) + "\n";
    put(ctx, name + ".csv", s);
  };
  emit("u1", "length", hp.u1_plus, hp.u1_minus);
  emit("u2", "length", hp.u2_plus, hp.u2_minus);
  emit("sigma11", "G", sf.plus.s11, sf.minus.s11);
  emit("sigma12", "G", sf.plus.s12, sf.minus.s12);
  emit("sigma22", "G", sf.plus.s22, sf.minus.s22);
  emit("sigma33", "G", sf.plus.s33, sf.minus.s33);
  extra["grid"] = {{"L", ctx.grid.half_length()}, {"N", ctx.grid.size()}, {"x_max", ctx.cfg.extend_x_max_over_zeta * z}};
  extra["ylevels"] = yl.values;
  extra["gauge"] = {{"u2_zero_mode", "Fourier zero mode of the correction set to 0; background u2 from the closed form"},
                    {"lower_half_plane", "u1(x,-y) = -u1(x,y), u2(x,-y) = u2(x,y)"}};
}

json breakdown_json(const EnergyBreakdown& e) {
  return {{"E_mis", e.E_mis},           {"E_gamma_e_pert", e.E_gamma_e_pert}, {"E_hat_gamma", e.E_hat_gamma},
          {"E_hat_total", e.E_hat_total}, {"cross_gamma", e.cross_gamma},       {"cross_els", e.cross_els},
          {"E_els_pert", e.E_els_pert}, {"misfit_diff", e.misfit_diff},       {"E_els_box", e.E_els_box},
          {"box_radius", e.box_radius}, {"box_warning", e.box_warning}};
}

void energy_cmd(Context& ctx, json& extra) {
  const double z = ctx.params.zeta();
  for (double r : ctx.cfg.energy_box_radii)
    if (r > ctx.cfg.L_over_zeta / 2.0) throw InvalidInput("energy.box_radii", "radii must not exceed L/2");
  Profile p = static_profile(ctx, nullptr);
  QuadratureSpec q{ctx.cfg.energy_y_min_over_zeta, ctx.cfg.energy_ratio, ctx.cfg.energy_y_max_over_L};
  const auto perts = seeded_perturbations(ctx.grid, ctx.params, ctx.cfg.seed, static_cast<int>(ctx.cfg.energy_perturbations),
                                          static_cast<int>(ctx.cfg.energy_out_of_range));
  const double R0 = ctx.cfg.energy_box_radii.empty() ? 0.0 : ctx.cfg.energy_box_radii.front() * z;
  json out;
  out["E_mis"] = misfit_energy(p, ctx.potential);
  json list = json::array();
  for (const auto& phi : perts) {
    auto e = energy_breakdown(phi, p, ctx.potential, 0.0, q);
    e.box_radius = R0;
    json j = breakdown_json(e);
    j.erase("E_els_box");
    j["label"] = phi.label;
    list.push_back(j);
  }
  out["perturbations"] = list;
  std::string csv = "# E_box [G b^2/d]; R [length]\nR,E\n";
  json box = json::array();
  for (double r : ctx.cfg.energy_box_radii) {
    const double E = elastic_energy_box(p, r * z, q);
    csv += format_number(r * z) + "," + format_number(E) + "\n";
    box.push_back({{"R", r * z}, {"E", E}});
  }
  out["box_energy"] = box;
  put(ctx, "energy.json", out.dump(2) + "\n");
  put(ctx, "energy_R.csv", csv);
  extra["seed"] = ctx.cfg.seed;
}

std::string trace_csv(const DynamicsTrace& t) {
  std::string s = "# t [d/G]; F [G b^2/d]; Q [(G b/d)^2 length]; residual [G b/d]; dt [d/G]\nt,F,Q,residual,dt\n";
  for (std::size_t i = 0; i < t.times.size(); ++i)
    s += format_number(t.times[i]) + "," + format_number(t.F_values[i]) + "," + format_number(t.Q_values[i]) + "," +
         format_number(t.residual_norms[i]) + "," + format_number(t.dt_history[i]) + "\n";
  return s;
}

void dynamics_cmd(Context& ctx, json& extra) {
  Profile ref = static_profile(ctx, nullptr);
  const double z = ctx.params.zeta();
  std::vector<double> v = ref.v();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = ctx.grid.node(j) / (ctx.cfg.dynamics_bump_width_over_zeta * z);
    v[j] += ctx.cfg.dynamics_bump_amplitude * ctx.params.b() * std::exp(-x * x);
  }
  DynamicsState s0{0.0, ref.with_v(v), ctx.potential, ref};
  DynamicsOptions o;
  o.dt = ctx.cfg.dynamics_dt;
  o.adapt = ctx.cfg.dynamics_adapt;
  o.max_halvings = static_cast<int>(ctx.cfg.dynamics_max_halvings);
  o.integrator = ctx.cfg.dynamics_integrator == "etd" ? Integrator::etd : Integrator::semi_implicit;
  o.energy_tol = ctx.cfg.dynamics_energy_tol;
  o.snapshot_times = ctx.cfg.dynamics_snapshots;
  std::optional<DynamicsResult> res;
  try {
    res = run_dynamics(s0, ctx.cfg.dynamics_T_end, o);
  } catch (const DynamicsError& e) {
    put(ctx, "trace.csv", trace_csv(e.trace()));
    throw;
  }
  const DynamicsResult& r = *res;
  put(ctx, "trace.csv", trace_csv(r.trace));
  for (std::size_t i = 0; i < r.snapshots.size(); ++i) {
    const auto& st = r.snapshots[i];
    const std::string name = "snapshot_" + std::to_string(i) + ".csv";
    write_profile_csv(ctx.dir / name, st.profile, burgers_density(st.profile).rho, flow_residual(st.profile, st.potential));
    ctx.files.push_back(name);
  }
  extra["final_time"] = r.state.t;
  extra["steps"] = r.trace.times.size() - 1;
  extra["final_F"] = r.trace.F_values.back();
}

int validate_cmd(Context& ctx, json& extra) {
  AcceptanceOptions o;
  o.params = ctx.params;
  o.L_over_zeta = ctx.cfg.L_over_zeta;
  o.N = static_cast<std::size_t>(ctx.cfg.N);
  o.seed = ctx.cfg.seed;
  const auto rep = run_acceptance(o);
  json checks = json::array();
  for (const auto& c : rep.checks)
    checks.push_back({{"criterion", c.criterion}, {"name", c.name}, {"expected", c.expected}, {"actual", c.actual},
                      {"tolerance", c.tolerance}, {"pass", c.pass}, {"gated", c.gated}});
  json crit = json::array();
  for (const auto& c : rep.criteria) {
    crit.push_back({{"id", c.id}, {"title", c.title}, {"pass", c.pass}, {"seconds", c.seconds}});
    std::cout << (c.pass ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.title << "\n";
  }
  json report = {{"pass", rep.pass()}, {"criteria", crit}, {"checks", checks}};
  put(ctx, "validate_report.json", report.dump(2) + "\n");
  extra["pass"] = rep.pass();
  return rep.pass() ? exit_ok : exit_validation;
}

void report_error(const fs::path& dir, const std::string& kind, const std::string& message, const std::string& key,
                  bool write_file) {
  json e = {{"error", kind}, {"message", message}};
  if (!key.empty()) e["key"] = key;
  std::cerr << e.dump() << "\n";
  if (write_file) {
    try {
      write_text(dir / "error.json", e.dump(2) + "\n");
    } catch (const std::exception&) {
    }
  }
}

}  // namespace

int run_command(const RunConfig& cfg, const std::string& command, const CommandOptions& opts) {
  const fs::path dir = cfg.output;
  bool dir_ready = false;
  try {
    static const std::vector<std::string> known = {"solve-static", "extend", "energy", "dynamics", "validate"};
    if (std::find(known.begin(), known.end(), command) == known.end())
      throw InvalidInput("command", "unknown subcommand '" + command + "'");
    validate(cfg);
    prepare_output_dir(dir, opts.overwrite);
    dir_ready = true;
    const auto params = cfg.params();
    Context ctx{cfg, dir, params, Grid1D(cfg.L_over_zeta * params.zeta(), static_cast<std::size_t>(cfg.N)),
                make_potential(cfg, params)};
    write_text(dir / "config.txt", echo(cfg));
    ctx.files.push_back("config.txt");
    const auto t0 = std::chrono::steady_clock::now();
    json extra = json::object();
    int code = exit_ok;
    try {
      if (command == "solve-static") solve_static_cmd(ctx, extra);
      else if (command == "extend") extend_cmd(ctx, extra);
      else if (command == "energy") energy_cmd(ctx, extra);
      else if (command == "dynamics") dynamics_cmd(ctx, extra);
      else code = validate_cmd(ctx, extra);
    } catch (...) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_manifest(ctx, command, secs, {{"status", "failed"}});
      throw;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    extra["status"] = code == exit_ok ? "ok" : "validation_failed";
    write_manifest(ctx, command, secs, extra);
    return code;
  } catch (const InvalidInput& e) {
    report_error(dir, "invalid_input", e.what(), e.key(), dir_ready);
    return exit_validation;
  } catch (const IoError& e) {
    report_error(dir, "io_error", e.what(), "", dir_ready);
    return exit_runtime;
  } catch (const std::exception& e) {
    report_error(dir, "runtime_error", e.what(), "", dir_ready);
    return exit_runtime;
  }
}

}  // namespace pn
