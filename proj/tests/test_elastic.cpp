#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "pn/elastic.hpp"
#include "pn/spectral.hpp"

using namespace pn;
using std::numbers::pi;

namespace {

const PhysParams prm = PhysParams::desk();
const double zeta = prm.zeta();

double max_abs(std::span<const double> a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

Profile single_mode(const Grid1D& g, long k) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::cos(g.wavenumber(k) * g.node(j));
  return Profile::correction_only(g, prm, v);
}

}  // namespace

TEST_CASE("closed-form fields") {
  const auto a = analytic_fields(prm, zeta, zeta);
  CHECK(a.u1 == doctest::Approx((-std::atan(0.5) + 1.0 / 7.5) / (2 * pi)).epsilon(1e-12));
  CHECK(a.u1 == doctest::Approx(-0.052570).epsilon(1e-4));
  CHECK(analytic_fields(prm, 0.0, zeta).s22 == doctest::Approx(-1.0 / (4 * pi)).epsilon(1e-12));
  for (double y : {0.1, 1.0, 7.0}) {
    CHECK(analytic_fields(prm, 0.0, y).u1 == 0.0);
    CHECK(analytic_fields(prm, 0.0, -y).u1 == 0.0);
    CHECK(std::abs(analytic_fields(prm, 0.0, y).s12) < 1e-15);
  }
  for (double x : {-3.0, -0.2, 0.5, 4.0}) {
    CHECK(analytic_fields(prm, x, 0.0, +1).u1 == doctest::Approx(-std::atan(x / zeta) / (2 * pi)).epsilon(1e-14));
    CHECK(analytic_fields(prm, x, 0.0, +1).s22 == doctest::Approx(0.0));
  }
  CHECK(analytic_fields(prm, zeta, 0.0, +1).s12 == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-12));
  // Mirror across the slip line.
  const auto up = analytic_fields(prm, 0.7, 1.3), dn = analytic_fields(prm, 0.7, -1.3);
  CHECK(dn.u1 == doctest::Approx(-up.u1));
  CHECK(dn.u2 == doctest::Approx(up.u2));
  CHECK(dn.s12 == doctest::Approx(up.s12));
  CHECK(dn.s22 == doctest::Approx(-up.s22));

  std::mt19937 gen(7);
  std::uniform_real_distribution<double> ux(-5, 5), uy(0.05, 5);
  for (int i = 0; i < 20; ++i) {
    const auto f = analytic_fields(prm, ux(gen), (i % 2 ? 1 : -1) * uy(gen));
    CHECK(std::abs(f.s33 - prm.nu() * (f.s11 + f.s22)) <= 1e-10 * (std::abs(f.s11) + std::abs(f.s22)));
  }
}

TEST_CASE("closed forms satisfy Hooke's law with the displacement gradients") {
  // Finite differences of the closed-form displacements recover the strains.
  const double h = 1e-5;
  for (auto [x, y] : {std::pair{0.3, 0.4}, {-1.2, 2.0}, {2.5, -0.7}}) {
    const auto f = analytic_fields(prm, x, y);
    const double e11 = (analytic_fields(prm, x + h, y).u1 - analytic_fields(prm, x - h, y).u1) / (2 * h);
    const double e22 = (analytic_fields(prm, x, y + h).u2 - analytic_fields(prm, x, y - h).u2) / (2 * h);
    const double e12 = 0.5 * ((analytic_fields(prm, x, y + h).u1 - analytic_fields(prm, x, y - h).u1) / (2 * h) +
                              (analytic_fields(prm, x + h, y).u2 - analytic_fields(prm, x - h, y).u2) / (2 * h));
    CHECK(f.e11 == doctest::Approx(e11).epsilon(1e-6));
    CHECK(f.e22 == doctest::Approx(e22).epsilon(1e-6));
    CHECK(f.e12 == doctest::Approx(e12).epsilon(1e-6));
    const double lam = prm.lame_lambda(), G = prm.G();
    CHECK(f.s11 == doctest::Approx(lam * (e11 + e22) + 2 * G * e11).epsilon(1e-6));
    CHECK(f.s12 == doctest::Approx(2 * G * e12).epsilon(1e-6));
  }
}

TEST_CASE("extension trace and mirror symmetry") {
  const Grid1D g(100 * zeta, 2048);
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = 0.05 * std::exp(-std::pow(g.node(j) - 0.4, 2));
  const auto p = Profile::analytic(g, prm).with_v(v);
  const Extension ext(p);
  const auto l0 = ext.level(0.0);
  const auto u = p.u1();
  double tr = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) tr = std::max(tr, std::abs(l0.u1[j] - u[j]));
  CHECK(tr <= 1e-13);
  CHECK(max_abs(l0.s22) == 0.0);

  const auto yl = YLevels::geometric(0.1 * zeta, 10 * zeta, 7);
  const auto hp = extend_to_half_planes(p, yl);
  const auto sf = stress_field(p, yl);
  for (std::size_t i = 0; i < yl.values.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      CHECK(hp.u1_minus(i, j) == -hp.u1_plus(i, j));
      CHECK(hp.u2_minus(i, j) == hp.u2_plus(i, j));
      CHECK(sf.minus.s12(i, j) == sf.plus.s12(i, j));
      CHECK(sf.minus.s22(i, j) == -sf.plus.s22(i, j));
      const double s = std::abs(sf.plus.s11(i, j)) + std::abs(sf.plus.s22(i, j)) + 1e-300;
      CHECK(std::abs(sf.plus.s33(i, j) - prm.nu() * (sf.plus.s11(i, j) + sf.plus.s22(i, j))) <= 1e-10 * s);
    }
  CHECK_THROWS(YLevels({0.0, 1.0}));
  CHECK_THROWS(YLevels({1.0, 0.5}));
}

TEST_CASE("single mode vanishes at the root of the linear factor") {
  const Grid1D g(pi, 64);
  const long k = 3;
  const double xi = g.wavenumber(k);
  const auto lv = Extension(single_mode(g, k)).level((2 - 2 * prm.nu()) / xi);
  CHECK(max_abs(lv.u1) < 1e-14);
  CHECK(max_abs(Extension(single_mode(g, k)).level(0.3).u1) > 0.1);
}

TEST_CASE("spectral extension of a background difference matches the closed forms") {
  const Grid1D g(200 * zeta, 4096);
  const Profile wide(g, prm, 2 * zeta, 0.0, std::vector<double>(g.size(), 0.0));
  const auto diff = Profile::correction_only(g, prm, [&] {
    auto a = Profile::analytic(g, prm).u1();
    const auto b = wide.u1();
    for (std::size_t j = 0; j < a.size(); ++j) a[j] -= b[j];
    return a;
  }());
  const Extension ext(diff);
  double err = 0.0, scale = 0.0;
  for (double y : {0.5 * zeta, zeta, 3 * zeta}) {
    const auto lv = ext.level(y);
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.node(j);
      if (std::abs(x) > 10 * zeta) continue;
      const double ref = analytic_fields(prm, zeta, x, y).s12 - analytic_fields(prm, 2 * zeta, x, y).s12;
      err = std::max(err, std::abs(lv.s12[j] - ref));
      scale = std::max(scale, std::abs(ref));
    }
  }
  CHECK(err <= 1e-3 * scale);
}

TEST_CASE("slip-plane traction") {
  const Grid1D g(128 * zeta, 4096);  // x = zeta is a node
  const auto t = dtn_traction(Profile::analytic(g, prm));
  CHECK(max_abs(t.sigma22) == 0.0);
  const std::size_t jz = 2048 + 16;
  REQUIRE(g.node(jz) == doctest::Approx(zeta));
  CHECK(t.sigma12[jz] == doctest::Approx(1.0 / (2 * pi)).epsilon(1e-12));
  CHECK(std::abs(t.sigma12[2048]) < 1e-15);
  // Agrees with the one-sided limit of the closed-form stress.
  CHECK(t.sigma12[jz] == doctest::Approx(analytic_fields(prm, zeta, 0.0, +1).s12).epsilon(1e-12));
  // sigma12 = -(G/(1-nu)) Lambda u1 for a spectral correction too.
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(-g.node(j) * g.node(j));
  const auto tc = dtn_traction(Profile::correction_only(g, prm, v));
  const auto lv = apply_half_laplacian(g, v);
  for (std::size_t j = 0; j < g.size(); j += 101) CHECK(tc.sigma12[j] == doctest::Approx(-lv[j] / 0.75).epsilon(1e-12));
}

TEST_CASE("Lambda seminorm") {
  const Grid1D g(pi, 64);
  CHECK(lambda_seminorm(Profile::correction_only(g, prm, std::vector<double>(64, 0.0)), 1.0, 0).value == 0.0);
  CHECK_THROWS(lambda_seminorm(single_mode(g, 2), 1.0, 2));
  CHECK_THROWS(lambda_seminorm(single_mode(g, 2), 0.5, 0));

  // Single mode against brute-force quadrature in y of the extended field.
  const auto p = single_mode(g, 2);
  const Extension ext(p);
  boost::math::quadrature::exp_sinh<double> q;
  for (int m : {0, 1}) {
    const double dy = 1e-5;
    auto integrand = [&](double y) {
      if (!(y < 200.0)) return 0.0;
      auto lv = ext.level(y);
      std::vector<double> a = lv.u1, b = lv.u2;
      if (m == 1) {
        const auto hi = ext.level(y + dy), lo = ext.level(std::max(0.0, y - dy));
        const double w = y + dy - std::max(0.0, y - dy);
        for (std::size_t j = 0; j < a.size(); ++j) a[j] = (hi.u1[j] - lo.u1[j]) / w, b[j] = (hi.u2[j] - lo.u2[j]) / w;
        return inner(g, a, a) + inner(g, b, b);
      }
      const auto la = apply_half_laplacian(g, a), lb = apply_half_laplacian(g, b);
      return inner(g, la, la) + inner(g, lb, lb);
    };
    const double ref = 2.0 * q.integrate(integrand, 1e-9);
    CHECK(lambda_seminorm(p, 1.0, m).value == doctest::Approx(ref).epsilon(1e-5));
  }

  // Bounded ratio for the closed-form profile across grids.
  for (int m : {0, 1}) {
    std::vector<double> r;
    for (auto [Lz, n] : {std::pair{50.0, 1024}, {100.0, 2048}, {200.0, 8192}}) {
      const auto ls = lambda_seminorm(Profile::analytic(Grid1D(Lz * zeta, n), prm), 1.5, m);
      CHECK(std::isfinite(ls.value));
      CHECK(ls.value > 0.0);
      r.push_back(ls.ratio);
    }
    CHECK(r[0] == doctest::Approx(r[2]).epsilon(0.01));
    CHECK(r[1] == doctest::Approx(r[2]).epsilon(0.01));
  }
}

TEST_CASE("mode energy of the extension") {
  const auto ext = extension_mode_profile(prm);
  CHECK(ext.f(0.0) == 1.0);
  // Half the slip-plane work G/(1-nu) |xi| |A|^2.
  CHECK(mode_energy_functional(prm, ext) == doctest::Approx(prm.G() / (2 * (1 - prm.nu()))).epsilon(1e-8));
  const ModeProfile plain{"exp", [](double t) { return std::exp(-t); }, [](double t) { return -std::exp(-t); },
                          [](double) { return 0.0; }, [](double) { return 0.0; }};
  CHECK(mode_energy_functional(prm, plain) > mode_energy_functional(prm, ext));

  const Grid1D g(20.0, 256);
  std::vector<double> tr(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) tr[j] = std::exp(-g.node(j) * g.node(j));
  CHECK(trace_field_energy(g, prm, tr, ext) ==
        doctest::Approx(0.5 * prm.c0() * inner(g, tr, apply_half_laplacian(g, tr))).epsilon(1e-8));
}

TEST_CASE("interior equilibrium improves under refinement") {
  std::vector<double> res;
  for (std::size_t n : {1024, 2048, 4096}) {
    const Grid1D g(100 * zeta, n);
    res.push_back(equilibrium_residual(Profile::analytic(g, prm), zeta, g.spacing()));
  }
  MESSAGE("equilibrium residuals " << res[0] << " " << res[1] << " " << res[2]);
  CHECK(res[1] < res[0]);
  CHECK(res[2] < res[1]);
  CHECK(res[2] < 1e-2 * prm.stress_scale() / zeta);
}
