#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "pn/params.hpp"

namespace pn {

/// All run settings. Every key has an explicit default; echo() writes the
/// complete set so that parse(echo(cfg)) == cfg.
struct RunConfig {
  std::string format_version = "pn-config/1";
  double G = 1.0, nu = 0.25, b = 1.0, d = 1.0;
  double L_over_zeta = 200.0;
  long N = 4096;
  std::string potential = "frenkel";
  std::string init = "tanh";          // tanh | analytic
  std::string profile_in;             // profile CSV to reuse instead of solving
  std::uint64_t seed = 20240607;
  std::string output = "pn_out";

  // solve-static
  double solve_dt0 = 0.25;
  double solve_res_tol = 1e-10;
  long solve_max_iters = 20000;
  bool solve_newton = true;

  // extend
  double extend_y_min_over_zeta = 0.1;
  double extend_y_max_over_zeta = 10.0;
  long extend_levels = 21;
  double extend_x_max_over_zeta = 20.0;

  // energy
  std::vector<double> energy_box_radii = {5.0, 10.0, 20.0, 40.0};  // units of zeta
  long energy_perturbations = 10;
  long energy_out_of_range = 3;
  double energy_y_min_over_zeta = 0.02;
  double energy_ratio = 1.03;
  double energy_y_max_over_L = 8.0;

  // dynamics
  double dynamics_dt = 0.1;
  double dynamics_T_end = 50.0;
  bool dynamics_adapt = true;
  long dynamics_max_halvings = 20;
  std::string dynamics_integrator = "semi_implicit";  // semi_implicit | etd
  double dynamics_bump_amplitude = 0.1;               // units of b
  double dynamics_bump_width_over_zeta = 1.0;
  double dynamics_energy_tol = 1e-10;
  std::vector<double> dynamics_snapshots;

  PhysParams params() const { return {G, nu, b, d}; }
  double zeta() const { return d / (2.0 * (1.0 - nu)); }

  bool operator==(const RunConfig&) const = default;
};

/// key = value lines; '#' starts a comment.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

/// Apply key/value pairs on top of `base`. Unknown keys and out-of-range
/// values throw InvalidInput naming the key.
RunConfig apply_settings(RunConfig base, const std::map<std::string, std::string>& kv);

/// File (optional, empty path = defaults) overridden by flags.
RunConfig parse_config(const std::filesystem::path& file, const std::map<std::string, std::string>& overrides);

void validate(const RunConfig& cfg);

std::string echo(const RunConfig& cfg);
/// FNV-1a 64-bit hash of echo(cfg) with the output directory reset, as 16 hex digits.
std::string config_hash(const RunConfig& cfg);

std::vector<std::string> config_keys();

}  // namespace pn
