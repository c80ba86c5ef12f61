#pragma once

#include <string>
#include <vector>

#include "pn/grid.hpp"
#include "pn/params.hpp"
#include "pn/spectral.hpp"

namespace pn {

/// Slip-plane displacement u1 = u_bg(x - x0; zeta_bg) + v(x), with
/// u_bg(x; z) = -(b/2pi) atan(x/z) and v sampled on the grid.
///
/// A profile built with correction_only() has no background and u1 = v.
class Profile {
 public:
  Profile(Grid1D grid, PhysParams params, double zeta_bg, double x0, std::vector<double> v);

  /// v = 0, zeta_bg = zeta: the closed-form solution for the Frenkel potential.
  static Profile analytic(const Grid1D& grid, const PhysParams& params, double x0 = 0.0);
  /// Background with width zeta_bg and v chosen so that u1 samples equal `u1`.
  static Profile from_samples(const Grid1D& grid, const PhysParams& params, const std::vector<double>& u1,
                              double zeta_bg, double x0 = 0.0);
  static Profile correction_only(const Grid1D& grid, const PhysParams& params, std::vector<double> v);

  const Grid1D& grid() const noexcept { return grid_; }
  const PhysParams& params() const noexcept { return params_; }
  bool has_background() const noexcept { return background_; }
  double zeta_bg() const noexcept { return zeta_bg_; }
  double x0() const noexcept { return x0_; }
  const std::vector<double>& v() const noexcept { return v_; }

  // Background and its closed-form derivatives at a point (0 without background).
  double background(double x) const;
  double background_derivative(double x) const;
  double background_half_laplacian(double x) const;

  std::vector<double> background_samples() const;
  std::vector<double> u1() const;
  /// u1 at x = L, using periodicity of v.
  double u1_right_end() const;
  /// phi = 2 u1 + b/2.
  std::vector<double> disregistry() const;
  /// (-d_xx)^{1/2} u1: closed form for the background plus spectral v.
  std::vector<double> half_laplacian() const;
  /// d_x u1: closed form for the background plus spectral v.
  std::vector<double> derivative() const;

  Profile with_v(std::vector<double> v) const;
  /// Profile of u1(x - a).
  Profile translate(double a) const;

  /// Squared H^s seminorm of u1: closed form for the background, grid sum for
  /// v and the background-v cross term.
  double hs_seminorm_sq(double s) const;

  struct TailReport {
    double v_left = 0.0, v_right = 0.0;
    double u_left = 0.0, u_right = 0.0;
    bool ok = true;
    std::string message;
  };
  /// max(|v(x_0)|, |v(x_{N-1})|) <= tol b and u1 near -+b/4 at the ends.
  TailReport check_tails(double tol = 1e-3) const;

 private:
  Grid1D grid_;
  PhysParams params_;
  bool background_ = true;
  double zeta_bg_;
  double x0_;
  std::vector<double> v_;
};

}  // namespace pn
