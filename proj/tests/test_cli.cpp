#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path base = fs::temp_directory_path() / "pn_cli_tests";
const std::string small = " --N=1024 --L_over_zeta=100";

int run(const std::string& args, const std::string& err_file = "") {
  std::string cmd = std::string(PNSOLVE_PATH) + " " + args + " > /dev/null";
  cmd += err_file.empty() ? " 2> /dev/null" : " 2> " + (base / err_file).string();
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string out(const std::string& name) { return " --output " + (base / name).string(); }

struct Fresh {
  Fresh() {
    fs::remove_all(base);
    fs::create_directories(base);
  }
};
const Fresh fresh;

}  // namespace

TEST_CASE("solve-static writes the profile and manifest") {
  REQUIRE(run("solve-static" + out("s1") + small) == 0);
  std::ifstream in(base / "s1" / "profile.csv");
  std::string comment, header;
  std::getline(in, comment);
  std::getline(in, header);
  CHECK(comment.rfind("#", 0) == 0);
  CHECK(header == "x,u1,v,rho,residual");
  const auto man = json::parse(slurp(base / "s1" / "manifest.json"));
  CHECK(man["command"] == "solve-static");
  CHECK(man["config_hash"].get<std::string>().size() == 16);
  CHECK(man.contains("timings"));
  CHECK(man.contains("versions"));
  const auto sum = json::parse(slurp(base / "s1" / "summary.json"));
  CHECK(sum["residual_linf"].get<double>() <= 1e-10);
  CHECK(fs::exists(base / "s1" / "config.txt"));
}

TEST_CASE("outputs are deterministic") {
  REQUIRE(run("solve-static" + out("d1") + small) == 0);
  REQUIRE(run("solve-static" + out("d2") + small) == 0);
  CHECK(slurp(base / "d1" / "profile.csv") == slurp(base / "d2" / "profile.csv"));
  const auto a = json::parse(slurp(base / "d1" / "manifest.json"));
  const auto b = json::parse(slurp(base / "d2" / "manifest.json"));
  CHECK(a["config_hash"] == b["config_hash"]);
}

TEST_CASE("existing output directory needs --overwrite") {
  REQUIRE(run("solve-static" + out("o1") + small) == 0);
  const auto before = slurp(base / "o1" / "profile.csv");
  CHECK(run("solve-static" + out("o1") + small + " --N=512") == 2);
  CHECK(slurp(base / "o1" / "profile.csv") == before);
  CHECK(run("solve-static" + out("o1") + small + " --overwrite") == 0);
}

TEST_CASE("energy reuses an emitted profile reproducibly") {
  REQUIRE(run("solve-static" + out("p") + small) == 0);
  const std::string args = small + " --profile_in=" + (base / "p" / "profile.csv").string() +
                           " --energy.perturbations=3 --energy.out_of_range=1 --seed 11";
  REQUIRE(run("energy" + out("e1") + args) == 0);
  REQUIRE(run("energy" + out("e2") + args) == 0);
  CHECK(slurp(base / "e1" / "energy.json") == slurp(base / "e2" / "energy.json"));
  CHECK(slurp(base / "e1" / "energy_R.csv") == slurp(base / "e2" / "energy_R.csv"));
  const auto e = json::parse(slurp(base / "e1" / "energy.json"));
  CHECK(e["perturbations"].size() == 3);
  CHECK(e["E_mis"].get<double>() == doctest::Approx(0.106103).epsilon(5e-3));
}

TEST_CASE("extend writes one file per field") {
  REQUIRE(run("extend" + out("x") + " --N=512 --L_over_zeta=50 --extend.levels=3") == 0);
  for (auto f : {"u1", "u2", "sigma11", "sigma12", "sigma22", "sigma33"}) {
    std::ifstream in(base / "x" / (std::string(f) + ".csv"));
    std::string comment, header;
    std::getline(in, comment);
    std::getline(in, header);
    CHECK(header == "x,y,value");
  }
}

TEST_CASE("dynamics") {
  REQUIRE(run("dynamics" + out("dy") + small + " --dynamics.T_end=1 --dynamics.snapshots=0.5") == 0);
  CHECK(fs::exists(base / "dy" / "trace.csv"));
  CHECK(fs::exists(base / "dy" / "snapshot_0.csv"));

  // Step underflow: exit 2, trace and error report still written.
  const std::string bad = small + " --dynamics.dt=40 --dynamics.max_halvings=0 --dynamics.energy_tol=0"
                                  " --dynamics.bump_amplitude=0.24 --dynamics.T_end=200";
  CHECK(run("dynamics" + out("du") + bad, "du.err") == 2);
  std::ifstream in(base / "du" / "trace.csv");
  std::string comment, header;
  std::getline(in, comment);
  std::getline(in, header);
  CHECK(header == "t,F,Q,residual,dt");
  CHECK(json::parse(slurp(base / "du.err"))["error"] == "runtime_error");
  CHECK(fs::exists(base / "du" / "error.json"));
}

TEST_CASE("invalid input exits 1 with a JSON error naming the key") {
  CHECK(run("solve-static" + out("bad") + " --nu=0.6", "bad.err") == 1);
  CHECK(json::parse(slurp(base / "bad.err"))["key"] == "nu");
  CHECK(run("solve-static" + out("bad2") + " --nonsense=3", "bad2.err") == 1);
  CHECK(json::parse(slurp(base / "bad2.err"))["key"] == "nonsense");
  {
    std::ofstream(base / "run.cfg") << "N = 1024\nL_over_zeta = 100\nnu = 0.3\n";
  }
  CHECK(run("solve-static" + out("cfg") + " --config " + (base / "run.cfg").string() + " --N=512") == 0);
  const auto man = json::parse(slurp(base / "cfg" / "manifest.json"));
  CHECK(man["config"]["N"] == "512");
  CHECK(man["config"]["nu"] == "0.29999999999999999");
}

TEST_CASE("validate on defaults passes and reports every criterion") {
  REQUIRE(run("validate" + out("v")) == 0);
  const auto rep = json::parse(slurp(base / "v" / "validate_report.json"));
  CHECK(rep["pass"] == true);
  CHECK(rep["criteria"].size() == 12);
  for (const auto& c : rep["checks"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("expected"));
    CHECK(c.contains("actual"));
    CHECK(c.contains("tolerance"));
    CHECK(c.contains("pass"));
  }
}
