#include "pn/grid.hpp"

#include <cmath>
#include <numbers>

#include "pn/params.hpp"

namespace pn {

Grid1D::Grid1D(double half_length, std::size_t n) : L_(half_length), n_(n) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw InvalidInput("L", "half-length must be positive");
  if (n < 4 || n % 2 != 0) throw InvalidInput("N", "sample count must be even and at least 4");
  h_ = 2.0 * L_ / static_cast<double>(n_);
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[j] = node(j);
  return x;
}

double Grid1D::wavenumber(long k) const noexcept { return std::numbers::pi * static_cast<double>(k) / L_; }

double Grid1D::fft_wavenumber(std::size_t m) const noexcept {
  const long n = static_cast<long>(n_);
  const long k = static_cast<long>(m) < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - n;
  return wavenumber(k);
}

double Grid1D::dxi() const noexcept { return std::numbers::pi / L_; }

}  // namespace pn
