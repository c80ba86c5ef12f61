#include "pn/spectral.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "pn/params.hpp"

namespace pn {
namespace {

void check_length(const Grid1D& grid, std::span<const double> f, const char* op) {
  if (f.size() != grid.size())
    throw std::invalid_argument(std::string(op) + ": sample count " + std::to_string(f.size()) +
                                " does not match grid size " + std::to_string(grid.size()));
}

// Multiply the half spectrum by symbol(m, xi) where m is the FFT index.
template <class Symbol>
std::vector<double> multiply(const Grid1D& grid, std::span<const double> f, Symbol&& symbol) {
  RealFft fft(grid.size());
  auto spec = fft.forward(f);
  for (std::size_t m = 0; m < spec.size(); ++m) spec[m] *= symbol(m, grid.fft_wavenumber(m));
  return fft.inverse(spec);
}

}  // namespace

SpectralField SpectralField::from_samples(const Grid1D& grid, std::span<const double> samples) {
  check_length(grid, samples, "SpectralField::from_samples");
  RealFft fft(grid.size());
  const auto half = fft.forward(samples);
  const long n = static_cast<long>(grid.size());
  const double h = grid.spacing();
  std::vector<cplx> coeffs(grid.size());
  for (long k = -n / 2; k < n / 2; ++k) {
    const long m = k >= 0 ? k : -k;
    cplx c = half[static_cast<std::size_t>(m)];
    if (k < 0) c = std::conj(c);
    // exp(-i xi_k x_j) = (-1)^k exp(-2 pi i k j / N) since x_0 = -L.
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    coeffs[static_cast<std::size_t>(k + n / 2)] = h * sign * c;
  }
  return SpectralField(grid, std::move(coeffs));
}

cplx SpectralField::coeff(long k) const {
  const long n = static_cast<long>(grid_.size());
  if (k < -n / 2 || k >= n / 2) throw std::out_of_range("SpectralField::coeff");
  return coeffs_[static_cast<std::size_t>(k + n / 2)];
}

std::vector<double> SpectralField::to_samples() const {
  const long n = static_cast<long>(grid_.size());
  const double h = grid_.spacing();
  std::vector<cplx> half(grid_.size() / 2 + 1);
  for (long m = 0; m <= n / 2; ++m) {
    const long k = (m == n / 2) ? -n / 2 : m;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    half[static_cast<std::size_t>(m)] = sign * coeff(k) / h;
  }
  return RealFft(grid_.size()).inverse(half);
}

std::vector<double> apply_half_laplacian(const Grid1D& grid, std::span<const double> f) {
  check_length(grid, f, "apply_half_laplacian");
  return multiply(grid, f, [](std::size_t, double xi) { return cplx(std::abs(xi), 0.0); });
}

std::vector<double> apply_hilbert(const Grid1D& grid, std::span<const double> f) {
  check_length(grid, f, "apply_hilbert");
  const std::size_t nyq = grid.size() / 2;
  return multiply(grid, f, [nyq](std::size_t m, double xi) {
    if (m == 0 || m == nyq) return cplx(0.0, 0.0);
    return cplx(0.0, xi > 0 ? -1.0 : 1.0);
  });
}

std::vector<double> derivative(const Grid1D& grid, std::span<const double> f) {
  check_length(grid, f, "derivative");
  const std::size_t nyq = grid.size() / 2;
  return multiply(grid, f, [nyq](std::size_t m, double xi) {
    return m == nyq ? cplx(0.0, 0.0) : cplx(0.0, xi);
  });
}

std::vector<double> fourier_shift(const Grid1D& grid, std::span<const double> f, double shift) {
  check_length(grid, f, "fourier_shift");
  const std::size_t nyq = grid.size() / 2;
  return multiply(grid, f, [nyq, shift](std::size_t m, double xi) {
    if (m == nyq) return cplx(std::cos(xi * shift), 0.0);
    return std::polar(1.0, xi * shift);
  });
}

std::vector<double> apply_resolvent(const Grid1D& grid, std::span<const double> f, double c0, double dt,
                                    double shift) {
  check_length(grid, f, "apply_resolvent");
  return multiply(grid, f, [=](std::size_t, double xi) {
    return cplx(1.0 / (shift + dt * c0 * std::abs(xi)), 0.0);
  });
}

double inner(const Grid1D& grid, std::span<const double> f, std::span<const double> g) {
  check_length(grid, f, "inner");
  check_length(grid, g, "inner");
  double s = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * g[j];
  return grid.spacing() * s;
}

double hs_seminorm_sq(const Grid1D& grid, std::span<const double> samples, double s) {
  check_length(grid, samples, "hs_seminorm_sq");
  if (s < 0.0) throw InvalidInput("s", "seminorm exponent must be nonnegative");
  RealFft fft(grid.size());
  const auto half = fft.forward(samples);
  const double h = grid.spacing();
  const std::size_t nyq = grid.size() / 2;
  double sum = 0.0;
  for (std::size_t m = 0; m <= nyq; ++m) {
    const double xi = std::abs(grid.fft_wavenumber(m));
    const double w = (m == 0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(xi, 2.0 * s);
    const double mult = (m == 0 || m == nyq) ? 1.0 : 2.0;
    sum += mult * w * std::norm(h * half[m]);
  }
  return sum * grid.dxi() / (2.0 * std::numbers::pi);
}

double hs_seminorm_sq_analytic(double b, std::span<const ArctanTerm> terms, double s) {
  double net = 0.0, scale = 0.0;
  for (const auto& t : terms) {
    if (!(t.zeta > 0.0)) throw InvalidInput("zeta", "arctan width must be positive");
    net += t.weight;
    scale += std::abs(t.weight);
  }
  if (scale == 0.0) return 0.0;
  const bool decaying = std::abs(net) <= 1e-14 * scale;
  if (!decaying && s <= 0.5)
    throw SeminormDivergence("arctan profile has infinite H^s seminorm for s <= 1/2");
  if (decaying && s <= -0.5)
    throw SeminormDivergence("seminorm exponent too small for a decaying arctan combination");

  auto integrand = [&](double xi) {
    double sum = 0.0;
    for (const auto& t : terms) sum += t.weight * std::exp(-t.zeta * xi);
    return std::pow(xi, 2.0 * s - 2.0) * sum * sum;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double value = integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-13,
                                            &err);
  return b * b / (4.0 * std::numbers::pi) * value;
}

cplx arctan_transform(double b, double zeta, double x0, double xi) {
  if (xi == 0.0) return {0.0, 0.0};
  return cplx(0.0, b / (2.0 * xi)) * std::exp(cplx(-zeta * std::abs(xi), -xi * x0));
}

}  // namespace pn
