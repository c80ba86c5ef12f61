#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <map>

#include "pn/commands.hpp"
#include "pn/config.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Peierls-Nabarro edge dislocation solver"};
  app.require_subcommand(1);

  std::string config_path, output;
  bool overwrite = false;
  long seed = -1;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"solve-static", "solve the slip-plane equation and write the profile"},
      {"extend", "extend the static profile to both half-planes"},
      {"energy", "perturbed energies, cross terms and boxed elastic energy"},
      {"dynamics", "gradient-flow relaxation of a perturbed profile"},
      {"validate", "run the acceptance suite"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--output", output, "output directory");
    sub->add_flag("--overwrite", overwrite, "allow writing into a non-empty output directory");
    sub->add_option("--seed", seed, "seed for randomized perturbations");
    sub->allow_extras();
    sub->footer("Any configuration key may be overridden with --key=value, e.g. --N=8192 --dynamics.dt=0.05");
  }
  CLI11_PARSE(app, argc, argv);

  auto* sub = app.get_subcommands().front();
  std::map<std::string, std::string> overrides;
  for (const auto& extra : sub->remaining()) {
    const auto eq = extra.find('=');
    if (extra.rfind("--", 0) != 0 || eq == std::string::npos) {
      std::cerr << nlohmann::json{{"error", "invalid_input"}, {"message", "expected --key=value, got '" + extra + "'"}}.dump()
                << "\n";
      return pn::exit_validation;
    }
    overrides[extra.substr(2, eq - 2)] = extra.substr(eq + 1);
  }
  if (!output.empty()) overrides["output"] = output;
  if (seed >= 0) overrides["seed"] = std::to_string(seed);

  pn::RunConfig cfg;
  try {
    cfg = pn::parse_config(config_path, overrides);
  } catch (const pn::InvalidInput& e) {
    std::cerr << nlohmann::json{{"error", "invalid_input"}, {"key", e.key()}, {"message", e.what()}}.dump() << "\n";
    return pn::exit_validation;
  }
  return pn::run_command(cfg, sub->get_name(), {overwrite});
}
