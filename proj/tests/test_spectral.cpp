#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>
#include <random>

#include "pn/io.hpp"
#include "pn/params.hpp"
#include "pn/spectral.hpp"

using namespace pn;
using std::numbers::pi;

namespace {

double ubg(double x, double z, double b = 1.0) { return -b / (2 * pi) * std::atan(x / z); }

std::vector<double> sample(const Grid1D& g, auto f) {
  std::vector<double> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.node(j));
  return v;
}

std::vector<double> random_samples(const Grid1D& g, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(g.size());
  for (auto& x : v) x = nd(gen);
  return v;
}

// Real trigonometric polynomial with modes |k| < N/4.
std::vector<double> band_limited(const Grid1D& g, unsigned seed) {
  std::mt19937 gen(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(g.size(), 0.0);
  const long kmax = static_cast<long>(g.size()) / 4;
  for (long k = 0; k < kmax; ++k) {
    const double a = nd(gen), b = nd(gen);
    const double xi = g.wavenumber(k);
    for (std::size_t j = 0; j < g.size(); ++j) v[j] += a * std::cos(xi * g.node(j)) + b * std::sin(xi * g.node(j));
  }
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("grid construction") {
  const Grid1D g(1.0, 4);
  CHECK(g.spacing() == 0.5);
  CHECK(g.nodes() == std::vector<double>{-1.0, -0.5, 0.0, 0.5});
  CHECK(g.wavenumber(-2) == doctest::Approx(-2 * pi));
  CHECK(g.wavenumber(-1) == doctest::Approx(-pi));
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.wavenumber(1) == doctest::Approx(pi));

  const double z = 2.0 / 3.0;
  const Grid1D d(200 * z, 4096);
  CHECK(d.spacing() == doctest::Approx(400 * z / 4096).epsilon(1e-15));
  CHECK(d.spacing() * 4096 == doctest::Approx(2 * d.half_length()).epsilon(1e-15));

  CHECK_THROWS_AS(Grid1D(1.0, 3), InvalidInput);
  CHECK_THROWS_AS(Grid1D(0.0, 16), InvalidInput);
  CHECK_THROWS_AS(Grid1D(-1.0, 16), InvalidInput);
}

TEST_CASE("physical parameters") {
  const auto p = PhysParams::desk();
  CHECK(p.zeta() == 1.0 / (2.0 * (1.0 - 0.25)));
  CHECK(p.c0() == doctest::Approx(8.0 / 3.0));
  CHECK(PhysParams::normalized().c0() == doctest::Approx(2.0));
  CHECK_THROWS_AS(PhysParams(1, 0.5, 1, 1), InvalidInput);
  CHECK_THROWS_AS(PhysParams(1, 0.0, 1, 1), InvalidInput);
  CHECK_THROWS_AS(PhysParams(-1, 0.3, 1, 1), InvalidInput);
  try {
    PhysParams(1, 0.6, 1, 1);
  } catch (const InvalidInput& e) {
    CHECK(e.key() == "nu");
  }
}

TEST_CASE("Fourier coefficients") {
  const Grid1D g(10.0, 64);
  const auto f = random_samples(g, 1);
  const auto F = SpectralField::from_samples(g, f);
  for (long k = 1; k < 32; ++k) CHECK(std::abs(F.coeff(-k) - std::conj(F.coeff(k))) < 1e-12);
  CHECK(max_abs_diff(F.to_samples(), f) < 1e-12);
  // Gaussian: u^(xi) = sqrt(pi) exp(-xi^2/4).
  const Grid1D w(20.0, 256);
  const auto G = SpectralField::from_samples(w, sample(w, [](double x) { return std::exp(-x * x); }));
  for (long k : {0L, 1L, 5L, -7L})
    CHECK(std::abs(G.coeff(k) - std::sqrt(pi) * std::exp(-w.wavenumber(k) * w.wavenumber(k) / 4)) < 1e-12);
}

TEST_CASE("half-Laplacian examples") {
  const Grid1D g(pi, 64);
  const auto c = apply_half_laplacian(g, std::vector<double>(64, 3.0));
  for (double x : c) CHECK(std::abs(x) < 1e-14);
  for (int k : {1, 3, 17}) {
    const auto s = apply_half_laplacian(g, sample(g, [k](double x) { return std::sin(k * x); }));
    CHECK(max_abs_diff(s, sample(g, [k](double x) { return k * std::sin(k * x); })) < 1e-11);
  }
  // Difference of two backgrounds: closed form -(b/2pi)(x/(x^2+1) - x/(x^2+4)).
  const Grid1D big(2048.0, 1 << 17);
  const auto f = sample(big, [](double x) { return ubg(x, 1.0) - ubg(x, 2.0); });
  const auto lf = apply_half_laplacian(big, f);
  const std::size_t j1 = static_cast<std::size_t>(std::lround((1.0 + 2048.0) / big.spacing()));
  REQUIRE(big.node(j1) == doctest::Approx(1.0));
  CHECK(lf[j1] == doctest::Approx(-3.0 / (20.0 * pi)).epsilon(1e-4));
}

TEST_CASE("Hilbert transform examples") {
  const Grid1D g(pi, 64);
  const auto c = apply_hilbert(g, std::vector<double>(64, -2.0));
  for (double x : c) CHECK(std::abs(x) < 1e-14);
  for (int k : {1, 4, 31}) {
    const auto h = apply_hilbert(g, sample(g, [k](double x) { return std::cos(k * x); }));
    CHECK(max_abs_diff(h, sample(g, [k](double x) { return std::sin(k * x); })) < 1e-12);
  }
  const Grid1D big(2048.0, 1 << 17);
  const auto h = apply_hilbert(big, sample(big, [](double x) { return 1.0 / (pi * (x * x + 1.0)); }));
  const auto ref = sample(big, [](double x) { return x / (pi * (x * x + 1.0)); });
  double err = 0.0;
  for (std::size_t j = 0; j < big.size(); ++j)
    if (std::abs(big.node(j)) <= 20.0) err = std::max(err, std::abs(h[j] - ref[j]));
  CHECK(err < 1e-3 * 0.5 / pi);
}

TEST_CASE("derivative and shift") {
  const Grid1D g(pi, 32);
  const auto d = derivative(g, sample(g, [](double x) { return std::sin(3 * x); }));
  CHECK(max_abs_diff(d, sample(g, [](double x) { return 3 * std::cos(3 * x); })) < 1e-12);
  const auto s = fourier_shift(g, sample(g, [](double x) { return std::cos(2 * x) + std::sin(5 * x); }), 0.3);
  CHECK(max_abs_diff(s, sample(g, [](double x) { return std::cos(2 * (x + 0.3)) + std::sin(5 * (x + 0.3)); })) < 1e-12);
  CHECK_THROWS(apply_half_laplacian(g, std::vector<double>(31, 0.0)));
  CHECK_THROWS(apply_hilbert(g, std::vector<double>(33, 0.0)));
}

TEST_CASE("operator properties on random samples") {
  const Grid1D g(7.0, 128);
  for (unsigned seed = 0; seed < 5; ++seed) {
    const auto f = random_samples(g, seed), h = random_samples(g, seed + 100);
    const double a = inner(g, apply_half_laplacian(g, f), h), b = inner(g, f, apply_half_laplacian(g, h));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(std::abs(a), 1.0));
    CHECK(inner(g, apply_half_laplacian(g, f), f) >= 0.0);
    const double p = hs_seminorm_sq(g, f, 0.5), q = inner(g, f, apply_half_laplacian(g, f));
    CHECK(p == doctest::Approx(q).epsilon(1e-12));
    const auto bl = band_limited(g, seed);
    const auto lhs = apply_hilbert(g, derivative(g, bl)), rhs = apply_half_laplacian(g, bl);
    double scale = 0.0;
    for (double x : rhs) scale = std::max(scale, std::abs(x));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12 * scale);
  }
}

TEST_CASE("seminorm values") {
  const Grid1D g(5.0, 64);
  CHECK(hs_seminorm_sq(g, std::vector<double>(64, 4.0), 1.0) == 0.0);
  const ArctanTerm t{1.0, 2.0 / 3.0};
  CHECK(hs_seminorm_sq_analytic(1.0, {&t, 1}, 1.0) == doctest::Approx(3.0 / (16.0 * pi)).epsilon(1e-10));
  CHECK(hs_seminorm_sq_analytic(1.0, {&t, 1}, 0.75) == doctest::Approx(0.122151).epsilon(1e-5));
  CHECK_THROWS_AS(hs_seminorm_sq_analytic(1.0, {&t, 1}, 0.5), SeminormDivergence);
  CHECK_THROWS_AS(hs_seminorm_sq_analytic(1.0, {&t, 1}, 0.3), SeminormDivergence);
  // A decaying combination is finite below 1/2.
  const ArctanTerm d[2] = {{1.0, 1.0}, {-1.0, 2.0}};
  const double s = 0.25;
  double ref = 0.0;
  for (auto a : d)
    for (auto b : d) ref += a.weight * b.weight / std::pow(a.zeta + b.zeta, 2 * s - 1);
  ref *= std::tgamma(2 * s - 1) / (4 * pi);
  CHECK(hs_seminorm_sq_analytic(1.0, d, s) == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("grid seminorm converges to the analytic value as L grows") {
  const double z = 2.0 / 3.0, h = 400 * z / 4096;
  const ArctanTerm d[2] = {{1.0, z}, {-1.0, 2 * z}};
  const double exact = hs_seminorm_sq_analytic(1.0, d, 1.0);
  std::vector<double> errs;
  for (double Lz : {50.0, 100.0, 200.0}) {
    const std::size_t n = static_cast<std::size_t>(std::lround(2 * Lz * z / h));
    const Grid1D g(Lz * z, n);
    const auto f = sample(g, [z](double x) { return ubg(x, z) - ubg(x, 2 * z); });
    errs.push_back(std::abs(hs_seminorm_sq(g, f, 1.0) - exact));
  }
  CHECK(std::log2(errs[0] / errs[1]) >= 1.0);
  CHECK(std::log2(errs[1] / errs[2]) >= 1.0);
}

TEST_CASE("sample CSV round trip") {
  const Grid1D g(3.0, 16);
  const auto f = random_samples(g, 9);
  const auto path = std::filesystem::temp_directory_path() / "pn_samples_roundtrip.csv";
  write_samples_csv(path, g, f);
  CHECK(read_samples_csv(path, g) == f);
  std::filesystem::remove(path);
}
