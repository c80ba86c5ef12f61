#include "pn/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace pn {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end || !std::isfinite(x)) throw InvalidInput(key, "expected a number, got '" + v + "'");
  return x;
}

long to_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, x);
  if (ec != std::errc() || ptr != end) throw InvalidInput(key, "expected an integer, got '" + v + "'");
  return x;
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw InvalidInput(key, "expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(to_double(key, item));
  }
  return out;
}

std::string list_str(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

struct Field {
  std::function<std::string(const RunConfig&)> get;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

#define PN_DOUBLE(name, member) \
  {name, {[](const RunConfig& c) { return fmt(c.member); }, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = to_double(k, v); }}}
#define PN_LONG(name, member) \
  {name, {[](const RunConfig& c) { return std::to_string(c.member); }, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = to_long(k, v); }}}
#define PN_BOOL(name, member) \
  {name, {[](const RunConfig& c) { return std::string(c.member ? "true" : "false"); }, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = to_bool(k, v); }}}
#define PN_STRING(name, member) \
  {name, {[](const RunConfig& c) { return c.member; }, [](RunConfig& c, const std::string&, const std::string& v) { c.member = v; }}}
#define PN_LIST(name, member) \
  {name, {[](const RunConfig& c) { return list_str(c.member); }, [](RunConfig& c, const std::string& k, const std::string& v) { c.member = to_list(k, v); }}}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> f = {
      PN_STRING("format_version", format_version),
      PN_DOUBLE("G", G),
      PN_DOUBLE("nu", nu),
      PN_DOUBLE("b", b),
      PN_DOUBLE("d", d),
      PN_DOUBLE("L_over_zeta", L_over_zeta),
      PN_LONG("N", N),
      PN_STRING("potential", potential),
      PN_STRING("init", init),
      PN_STRING("profile_in", profile_in),
      {"seed", {[](const RunConfig& c) { return std::to_string(c.seed); },
                [](RunConfig& c, const std::string& k, const std::string& v) {
                  std::uint64_t s = 0;
                  const auto* end = v.data() + v.size();
                  auto [ptr, ec] = std::from_chars(v.data(), end, s);
                  if (ec != std::errc() || ptr != end)
                    throw InvalidInput(k, "expected a nonnegative 64-bit integer, got '" + v + "'");
                  c.seed = s;
                }}},
      PN_STRING("output", output),
      PN_DOUBLE("solve.dt0", solve_dt0),
      PN_DOUBLE("solve.res_tol", solve_res_tol),
      PN_LONG("solve.max_iters", solve_max_iters),
      PN_BOOL("solve.newton", solve_newton),
      PN_DOUBLE("extend.y_min_over_zeta", extend_y_min_over_zeta),
      PN_DOUBLE("extend.y_max_over_zeta", extend_y_max_over_zeta),
      PN_LONG("extend.levels", extend_levels),
      PN_DOUBLE("extend.x_max_over_zeta", extend_x_max_over_zeta),
      PN_LIST("energy.box_radii", energy_box_radii),
      PN_LONG("energy.perturbations", energy_perturbations),
      PN_LONG("energy.out_of_range", energy_out_of_range),
      PN_DOUBLE("energy.y_min_over_zeta", energy_y_min_over_zeta),
      PN_DOUBLE("energy.ratio", energy_ratio),
      PN_DOUBLE("energy.y_max_over_L", energy_y_max_over_L),
      PN_DOUBLE("dynamics.dt", dynamics_dt),
      PN_DOUBLE("dynamics.T_end", dynamics_T_end),
      PN_BOOL("dynamics.adapt", dynamics_adapt),
      PN_LONG("dynamics.max_halvings", dynamics_max_halvings),
      PN_STRING("dynamics.integrator", dynamics_integrator),
      PN_DOUBLE("dynamics.bump_amplitude", dynamics_bump_amplitude),
      PN_DOUBLE("dynamics.bump_width_over_zeta", dynamics_bump_width_over_zeta),
      PN_DOUBLE("dynamics.energy_tol", dynamics_energy_tol),
      PN_LIST("dynamics.snapshots", dynamics_snapshots),
  };
  return f;
}

#undef PN_DOUBLE
#undef PN_LONG
#undef PN_BOOL
#undef PN_STRING
#undef PN_LIST

}  // namespace

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("config", "cannot open " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidInput("config", path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

RunConfig apply_settings(RunConfig cfg, const std::map<std::string, std::string>& kv) {
  const auto& f = fields();
  std::string zeta;
  for (const auto& [k, v] : kv) {
    if (k == "zeta") {
      zeta = v;
      continue;
    }
    const auto it = f.find(k);
    if (it == f.end()) throw InvalidInput(k, "unknown configuration key");
    it->second.set(cfg, k, v);
  }
  validate(cfg);
  if (!zeta.empty()) {
    const double z = to_double("zeta", zeta);
    if (std::abs(z - cfg.zeta()) > 1e-12 * cfg.zeta())
      throw InvalidInput("zeta", "derived value; must equal d/(2(1-nu)) = " + fmt(cfg.zeta()));
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& file, const std::map<std::string, std::string>& overrides) {
  RunConfig cfg;
  if (!file.empty()) cfg = apply_settings(cfg, read_key_values(file));
  return apply_settings(cfg, overrides);
}

void validate(const RunConfig& cfg) {
  (void)cfg.params();  // checks G, nu, b, d
  if (cfg.format_version != "pn-config/1") throw InvalidInput("format_version", "unsupported version " + cfg.format_version);
  if (!(cfg.L_over_zeta > 0.0)) throw InvalidInput("L_over_zeta", "must be positive");
  if (cfg.N < 4 || cfg.N % 2 != 0) throw InvalidInput("N", "sample count must be even and at least 4");
  if (cfg.potential != "frenkel" && cfg.potential.rfind("table:", 0) != 0)
    throw InvalidInput("potential", "expected frenkel or table:<path>");
  if (cfg.init != "tanh" && cfg.init != "analytic") throw InvalidInput("init", "expected tanh or analytic");
  if (cfg.output.empty()) throw InvalidInput("output", "output directory must not be empty");
  if (!(cfg.solve_dt0 > 0.0)) throw InvalidInput("solve.dt0", "must be positive");
  if (!(cfg.solve_res_tol > 0.0)) throw InvalidInput("solve.res_tol", "must be positive");
  if (cfg.solve_max_iters < 1) throw InvalidInput("solve.max_iters", "must be at least 1");
  if (!(cfg.extend_y_min_over_zeta > 0.0) || !(cfg.extend_y_max_over_zeta > cfg.extend_y_min_over_zeta))
    throw InvalidInput("extend.y_max_over_zeta", "need 0 < y_min < y_max");
  if (cfg.extend_levels < 2) throw InvalidInput("extend.levels", "must be at least 2");
  if (!(cfg.extend_x_max_over_zeta > 0.0)) throw InvalidInput("extend.x_max_over_zeta", "must be positive");
  for (double r : cfg.energy_box_radii)
    if (!(r > 0.0)) throw InvalidInput("energy.box_radii", "radii must be positive");
  if (cfg.energy_perturbations < 0) throw InvalidInput("energy.perturbations", "must be nonnegative");
  if (cfg.energy_out_of_range < 0 || cfg.energy_out_of_range > cfg.energy_perturbations)
    throw InvalidInput("energy.out_of_range", "must lie in [0, energy.perturbations]");
  if (!(cfg.energy_ratio > 1.0)) throw InvalidInput("energy.ratio", "must exceed 1");
  if (!(cfg.energy_y_min_over_zeta > 0.0)) throw InvalidInput("energy.y_min_over_zeta", "must be positive");
  if (!(cfg.energy_y_max_over_L > 0.0)) throw InvalidInput("energy.y_max_over_L", "must be positive");
  if (!(cfg.dynamics_dt > 0.0)) throw InvalidInput("dynamics.dt", "must be positive");
  if (!(cfg.dynamics_T_end > 0.0)) throw InvalidInput("dynamics.T_end", "must be positive");
  if (cfg.dynamics_max_halvings < 0) throw InvalidInput("dynamics.max_halvings", "must be nonnegative");
  if (cfg.dynamics_integrator != "semi_implicit" && cfg.dynamics_integrator != "etd")
    throw InvalidInput("dynamics.integrator", "expected semi_implicit or etd");
  if (!(cfg.dynamics_bump_width_over_zeta > 0.0)) throw InvalidInput("dynamics.bump_width_over_zeta", "must be positive");
  if (!(cfg.dynamics_energy_tol >= 0.0)) throw InvalidInput("dynamics.energy_tol", "must be nonnegative");
}

std::string echo(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, f] : fields()) out += k + " = " + f.get(cfg) + "\n";
  out += "zeta = " + fmt(cfg.zeta()) + "\n";
  return out;
}

std::string config_hash(const RunConfig& cfg) {
  // The output directory does not change what is computed.
  RunConfig key = cfg;
  key.output = RunConfig{}.output;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : echo(key)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> k;
  for (const auto& [name, f] : fields()) k.push_back(name);
  return k;
}

}  // namespace pn
