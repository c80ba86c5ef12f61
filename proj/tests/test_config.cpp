#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "pn/config.hpp"
#include "pn/io.hpp"

using namespace pn;
namespace fs = std::filesystem;

namespace {

fs::path write_config(const std::string& name, const std::string& text) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

std::string key_of(auto&& f) {
  try {
    f();
  } catch (const InvalidInput& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("defaults echo the derived core width") {
  const auto cfg = parse_config(write_config("pn_min.cfg", "# defaults only\n"), {});
  CHECK(cfg == RunConfig{});
  const auto text = echo(cfg);
  CHECK(text.find("zeta = 0.66666666666666663\n") != std::string::npos);
  for (const auto& k : config_keys()) CHECK(text.find(k + " = ") != std::string::npos);
  const auto c2 = parse_config({}, {{"nu", "0.3"}, {"d", "2"}});
  CHECK(echo(c2).find("zeta = " + format_number(2.0 / 1.4)) != std::string::npos);
}

TEST_CASE("out-of-range values name the key") {
  CHECK(key_of([] { parse_config(write_config("pn_nu.cfg", "nu = 0.6\n"), {}); }) == "nu");
  CHECK(key_of([] { parse_config({}, {{"N", "7"}}); }) == "N");
  CHECK(key_of([] { parse_config({}, {{"G", "-1"}}); }) == "G");
  CHECK(key_of([] { parse_config({}, {{"bogus", "1"}}); }) == "bogus");
  CHECK(key_of([] { parse_config({}, {{"dynamics.integrator", "rk4"}}); }) == "dynamics.integrator");
  CHECK(key_of([] { parse_config({}, {{"zeta", "1"}}); }) == "zeta");
  CHECK(key_of([] { parse_config({}, {{"N", "many"}}); }) == "N");
  CHECK_THROWS_AS(parse_config(write_config("pn_bad.cfg", "N 4096\n"), {}), InvalidInput);
  CHECK_THROWS_AS(parse_config(fs::temp_directory_path() / "pn_missing.cfg", {}), InvalidInput);
}

TEST_CASE("flags override the file") {
  const auto file = write_config("pn_n.cfg", "N = 4096\nseed = 5\n");
  const auto cfg = parse_config(file, {{"N", "8192"}});
  CHECK(cfg.N == 8192);
  CHECK(cfg.seed == 5);
}

TEST_CASE("echo round trip") {
  RunConfig cfg;
  cfg.nu = 0.3125;
  cfg.G = 1.0 / 3.0;
  cfg.energy_box_radii = {3.0, 7.5};
  cfg.dynamics_snapshots = {0.5, 1.0 / 3.0};
  cfg.dynamics_adapt = false;
  cfg.dynamics_integrator = "etd";
  cfg.potential = "table:/tmp/w.csv";
  cfg.seed = 18446744073709551615ULL;
  const auto back = parse_config(write_config("pn_echo.cfg", echo(cfg)), {});
  CHECK(back == cfg);
  CHECK(echo(back) == echo(cfg));
  CHECK(parse_config(write_config("pn_echo0.cfg", echo(RunConfig{})), {}) == RunConfig{});
}

TEST_CASE("config hash") {
  RunConfig a;
  CHECK(config_hash(a).size() == 16);
  CHECK(config_hash(a) == config_hash(RunConfig{}));
  RunConfig b;
  b.seed = 1;
  CHECK(config_hash(a) != config_hash(b));
  RunConfig c;
  c.output = "elsewhere";
  CHECK(config_hash(a) == config_hash(c));
}
