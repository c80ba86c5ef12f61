#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pn/dynamics.hpp"
#include "pn/spectral.hpp"
#include "pn/static_solver.hpp"

using namespace pn;
using std::numbers::pi;

namespace {

const PhysParams prm = PhysParams::desk();
const double zeta = prm.zeta();
const Grid1D grid(200 * zeta, 4096);
const Potential pot = Potential::frenkel(prm);

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

DynamicsState bump_state(double amp = 0.1) {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) v[j] = amp * std::exp(-std::pow(grid.node(j) / zeta, 2));
  const auto ref = Profile::analytic(grid, prm);
  return {0.0, ref.with_v(v), pot, ref};
}

// W = u^2 / 2 around a zero reference makes the ETD forcing vanish.
const Potential quadratic = Potential::custom(prm, [](double u, int k) { return k == 0 ? 0.5 * u * u : k == 1 ? u : 1.0; });

}  // namespace

TEST_CASE("semi-implicit step") {
  const auto ref = Profile::analytic(grid, prm);
  const DynamicsState fixed{0.0, ref, pot, ref};
  CHECK(max_abs(step_semi_implicit(fixed, 0.1).profile.v()) < 1e-14);
  CHECK(step_semi_implicit(fixed, 0.1).t == doctest::Approx(0.1));

  const Grid1D g(pi, 64);
  const long k = 5;
  std::vector<double> v(64);
  for (std::size_t j = 0; j < 64; ++j) v[j] = std::cos(g.wavenumber(k) * g.node(j));
  const auto zeroW = Potential::custom(prm, [](double, int) { return 0.0; });
  const DynamicsState s{0.0, Profile::correction_only(g, prm, v), zeroW, std::nullopt};
  const double dt = 0.3, f = 1.0 / (1.0 + dt * prm.c0() * g.wavenumber(k));
  const auto out = step_semi_implicit(s, dt).profile.v();
  for (std::size_t j = 0; j < 64; ++j) CHECK(out[j] == doctest::Approx(f * v[j]).epsilon(1e-12));

  const auto b = bump_state();
  CHECK(free_energy(step_semi_implicit(b, 0.01)) < free_energy(b));
}

TEST_CASE("ETD step") {
  const Grid1D g(pi, 64);
  const long k = 3;
  std::vector<double> v(64);
  for (std::size_t j = 0; j < 64; ++j) v[j] = std::sin(g.wavenumber(k) * g.node(j));
  const auto zero = Profile::correction_only(g, prm, std::vector<double>(64, 0.0));
  DynamicsState s{0.0, zero.with_v(v), quadratic, zero};
  const double dt = 0.2;
  for (int i = 0; i < 5; ++i) s = step_etd(s, dt);
  const double decay = std::exp(-(prm.c0() * g.wavenumber(k) + 1.0) * 5 * dt);
  for (std::size_t j = 0; j < 64; ++j) CHECK(s.profile.v()[j] == doctest::Approx(decay * v[j]).epsilon(1e-12));

  const auto ref = Profile::analytic(grid, prm);
  CHECK(max_abs(step_etd({0.0, ref, pot, ref}, 0.1).profile.v()) < 1e-14);
  CHECK_THROWS_AS(step_etd({0.0, ref, pot, std::nullopt}, 0.1), std::logic_error);
}

TEST_CASE("dissipation rate") {
  const auto ref = Profile::analytic(grid, prm);
  const DynamicsState fixed{0.0, ref, pot, ref};
  CHECK(dissipation_rate(fixed) <= 1e-18 * grid.half_length());
  CHECK(dissipation_rate(fixed) >= 0.0);
  const auto b = bump_state();
  CHECK(dissipation_rate(b) > 0.0);
  const auto r = flow_residual(b.profile, pot);
  double s = 0.0;
  for (double x : r) s += x * x;
  CHECK(dissipation_rate(b) == doctest::Approx(grid.spacing() * s));
  // -dF/dt from a small step.
  const double dt = 1e-4;
  const double rate = -(free_energy(step_semi_implicit(b, dt)) - free_energy(b)) / dt;
  CHECK(rate == doctest::Approx(dissipation_rate(b)).epsilon(0.05));
}

TEST_CASE("free energy") {
  const auto ref = Profile::analytic(grid, prm);
  CHECK(free_energy({0.0, ref, pot, ref}) == 0.0);
  // Quadratic in a small bump around a minimizer.
  const double f1 = free_energy(bump_state(1e-3)), f2 = free_energy(bump_state(2e-3));
  CHECK(f1 > 0.0);
  CHECK(f2 / f1 == doctest::Approx(4.0).epsilon(1e-2));
}

TEST_CASE("runs") {
  const auto ref = Profile::analytic(grid, prm);
  const auto still = run_dynamics({0.0, ref, pot, ref}, 1.0, {});
  for (double F : still.trace.F_values) CHECK(std::abs(F) <= 1e-15);
  for (double Q : still.trace.Q_values) CHECK(Q <= 1e-18 * grid.half_length());

  DynamicsOptions o;
  o.snapshot_times = {0.5, 2.0};
  const auto run = run_dynamics(bump_state(), 5.0, o);
  CHECK(run.state.t == doctest::Approx(5.0));
  REQUIRE(run.snapshots.size() == 2);
  CHECK(run.snapshots[0].t == doctest::Approx(0.5));
  CHECK(run.snapshots[1].t == doctest::Approx(2.0));
  const auto& F = run.trace.F_values;
  for (std::size_t i = 1; i < F.size(); ++i) {
    CHECK(F[i] <= F[i - 1] + 1e-10);
    CHECK(F[i] <= F[0]);
  }
  CHECK(F.back() < F.front());
  for (std::size_t i = 1; i < run.trace.times.size(); ++i) CHECK(run.trace.times[i] > run.trace.times[i - 1]);

  o.integrator = Integrator::etd;
  const auto etd = run_dynamics(bump_state(), 5.0, o);
  CHECK(max_abs([&] {
          auto a = etd.state.profile.u1();
          const auto b = run.state.profile.u1();
          for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
          return a;
        }()) < 1e-2);
}

TEST_CASE("odd data stays odd") {
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j) / zeta;
    v[j] = 0.05 * x * std::exp(-x * x);
  }
  const auto ref = Profile::analytic(grid, prm);
  for (auto integ : {Integrator::semi_implicit, Integrator::etd}) {
    DynamicsState s{0.0, ref.with_v(v), pot, ref};
    for (int i = 0; i < 20; ++i) s = advance(s, 0.1, integ);
    const auto u = s.profile.u1();
    double odd = 0.0;
    for (std::size_t j = 1; j < u.size(); ++j) odd = std::max(odd, std::abs(u[j] + u[u.size() - j]));
    CHECK(odd <= 1e-8);
  }
}

TEST_CASE("long run relaxes to the static solution") {
  const auto run = run_dynamics(bump_state(), 50.0, {});
  const auto c = center_profile(run.state.profile);
  CHECK(max_abs([&] {
          auto a = c.centered.u1();
          const auto b = Profile::analytic(grid, prm).u1();
          for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
          return a;
        }()) <= 1e-3);
  CHECK(residual(run.state.profile, pot).linf < 1e-3 * prm.stress_scale());
}

TEST_CASE("step underflow aborts with the trace") {
  DynamicsOptions o;
  o.dt = 40.0;
  o.max_halvings = 0;
  o.energy_tol = 0.0;
  try {
    run_dynamics(bump_state(0.24), 200.0, o);
    FAIL("expected DynamicsError");
  } catch (const DynamicsError& e) {
    CHECK(e.trace().times.size() >= 1);
    CHECK(e.last_state().t < 200.0);
  }
}
