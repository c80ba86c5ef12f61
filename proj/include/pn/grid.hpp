#pragma once

#include <cstddef>
#include <vector>

namespace pn {

/// Uniform periodic grid on [-L, L) with N nodes.
///
/// Nodes are x_j = -L + j h, h = 2L / N. Wavenumbers are xi_k = pi k / L for
/// k = -N/2 ... N/2 - 1; k = -N/2 is the single unpaired Nyquist mode.
class Grid1D {
 public:
  Grid1D(double half_length, std::size_t n);

  double half_length() const noexcept { return L_; }
  std::size_t size() const noexcept { return n_; }
  double spacing() const noexcept { return h_; }
  double node(std::size_t j) const noexcept { return -L_ + static_cast<double>(j) * h_; }
  std::vector<double> nodes() const;

  /// Wavenumber for signed index k in [-N/2, N/2).
  double wavenumber(long k) const noexcept;
  /// Wavenumber for FFT-ordered index m in [0, N): k = m for m < N/2, else m - N.
  double fft_wavenumber(std::size_t m) const noexcept;
  /// Spacing of the wavenumber grid, pi / L.
  double dxi() const noexcept;

  bool operator==(const Grid1D&) const = default;

 private:
  double L_;
  std::size_t n_;
  double h_;
};

}  // namespace pn
