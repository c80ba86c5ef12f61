#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "pn/fft.hpp"
#include "pn/grid.hpp"

namespace pn {

/// Fourier coefficients of real samples on a Grid1D.
///
/// c_k = h sum_j u_j exp(-i xi_k x_j) for k = -N/2 ... N/2 - 1, which
/// approximates u^(xi) = int u(x) exp(-i xi x) dx. Stored in signed order,
/// coeffs()[k + N/2] = c_k.
class SpectralField {
 public:
  static SpectralField from_samples(const Grid1D& grid, std::span<const double> samples);

  const Grid1D& grid() const noexcept { return grid_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  cplx coeff(long k) const;

  std::vector<double> to_samples() const;

 private:
  SpectralField(Grid1D grid, std::vector<cplx> coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {}
  Grid1D grid_;
  std::vector<cplx> coeffs_;
};

// Diagonal Fourier multipliers. All take and return real samples of length N.
// The zero mode of |xi| and sgn(xi) is annihilated; the Nyquist mode is
// kept for |xi| and dropped for sgn(xi) and i xi.

/// (-d_xx)^{1/2} f, symbol |xi|.
std::vector<double> apply_half_laplacian(const Grid1D& grid, std::span<const double> f);
/// Hilbert transform, symbol -i sgn(xi).
std::vector<double> apply_hilbert(const Grid1D& grid, std::span<const double> f);
/// Spectral first derivative, symbol i xi.
std::vector<double> derivative(const Grid1D& grid, std::span<const double> f);
/// Samples of f(x + shift) for the trigonometric interpolant of f.
std::vector<double> fourier_shift(const Grid1D& grid, std::span<const double> f, double shift);

/// Apply (c0 |xi| + shift)^{-1}. Used as a preconditioner and implicit solve.
std::vector<double> apply_resolvent(const Grid1D& grid, std::span<const double> f, double c0, double dt,
                                    double shift);

/// Discrete inner product h sum_j f_j g_j.
double inner(const Grid1D& grid, std::span<const double> f, std::span<const double> g);

class SeminormDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class SeminormMode { grid, analytic };

/// One term w * u_bg(x; zeta) of an arctan combination, u_bg = -(b/2pi) atan(x/zeta).
struct ArctanTerm {
  double weight;
  double zeta;
};

/// Squared homogeneous Sobolev seminorm
///   |u|^2_{H^s} = (1/2pi) int |xi|^{2s} |u^(xi)|^2 dxi
/// evaluated on the grid: (1/2pi) sum_k |xi_k|^{2s} |c_k|^2 (pi / L).
/// Samples must decay; no tail model is applied.
double hs_seminorm_sq(const Grid1D& grid, std::span<const double> samples, double s);

/// Same seminorm for sum_i w_i u_bg(x; zeta_i), by adaptive quadrature of
///   (b^2/4pi) int_0^inf xi^{2s-2} (sum_i w_i e^{-zeta_i xi})^2 dxi.
/// Throws SeminormDivergence when the weights do not cancel and s <= 1/2.
double hs_seminorm_sq_analytic(double b, std::span<const ArctanTerm> terms, double s);

/// Fourier transform of the shifted arctan background u_bg(x - x0; zeta):
/// (i b / 2 xi) exp(-zeta |xi| - i xi x0). Zero at xi = 0.
cplx arctan_transform(double b, double zeta, double x0, double xi);

}  // namespace pn
