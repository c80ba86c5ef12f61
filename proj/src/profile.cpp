#include "pn/profile.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace pn {

Profile::Profile(Grid1D grid, PhysParams params, double zeta_bg, double x0, std::vector<double> v)
    : grid_(grid), params_(params), zeta_bg_(zeta_bg), x0_(x0), v_(std::move(v)) {
  if (!(zeta_bg > 0.0)) throw InvalidInput("zeta_bg", "background width must be positive");
  if (v_.size() != grid_.size()) throw InvalidInput("v", "correction length does not match grid");
}

Profile Profile::analytic(const Grid1D& grid, const PhysParams& params, double x0) {
  return {grid, params, params.zeta(), x0, std::vector<double>(grid.size(), 0.0)};
}

Profile Profile::from_samples(const Grid1D& grid, const PhysParams& params, const std::vector<double>& u1,
                              double zeta_bg, double x0) {
  Profile p(grid, params, zeta_bg, x0, std::vector<double>(grid.size(), 0.0));
  if (u1.size() != grid.size()) throw InvalidInput("u1", "sample count does not match grid");
  for (std::size_t j = 0; j < grid.size(); ++j) p.v_[j] = u1[j] - p.background(grid.node(j));
  return p;
}

Profile Profile::correction_only(const Grid1D& grid, const PhysParams& params, std::vector<double> v) {
  Profile p(grid, params, params.zeta(), 0.0, std::move(v));
  p.background_ = false;
  return p;
}

double Profile::background(double x) const {
  if (!background_) return 0.0;
  return -params_.b() / (2.0 * std::numbers::pi) * std::atan((x - x0_) / zeta_bg_);
}

double Profile::background_derivative(double x) const {
  if (!background_) return 0.0;
  const double y = x - x0_;
  return -params_.b() / (2.0 * std::numbers::pi) * zeta_bg_ / (y * y + zeta_bg_ * zeta_bg_);
}

double Profile::background_half_laplacian(double x) const {
  if (!background_) return 0.0;
  const double y = x - x0_;
  return -params_.b() / (2.0 * std::numbers::pi) * y / (y * y + zeta_bg_ * zeta_bg_);
}

std::vector<double> Profile::background_samples() const {
  std::vector<double> out(grid_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = background(grid_.node(j));
  return out;
}

std::vector<double> Profile::u1() const {
  std::vector<double> out(grid_.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = background(grid_.node(j)) + v_[j];
  return out;
}

double Profile::u1_right_end() const { return background(grid_.half_length()) + v_.front(); }

std::vector<double> Profile::disregistry() const {
  auto u = u1();
  for (auto& x : u) x = 2.0 * x + params_.b() / 2.0;
  return u;
}

std::vector<double> Profile::half_laplacian() const {
  auto out = apply_half_laplacian(grid_, v_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += background_half_laplacian(grid_.node(j));
  return out;
}

std::vector<double> Profile::derivative() const {
  auto out = pn::derivative(grid_, v_);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] += background_derivative(grid_.node(j));
  return out;
}

Profile Profile::with_v(std::vector<double> v) const {
  Profile p = *this;
  if (v.size() != grid_.size()) throw InvalidInput("v", "correction length does not match grid");
  p.v_ = std::move(v);
  return p;
}

Profile Profile::translate(double a) const {
  Profile p = *this;
  p.v_ = fourier_shift(grid_, v_, -a);
  if (background_) p.x0_ = x0_ + a;
  return p;
}

double Profile::hs_seminorm_sq(double s) const {
  double total = pn::hs_seminorm_sq(grid_, v_, s);
  if (!background_) return total;
  const ArctanTerm term{1.0, zeta_bg_};
  total += hs_seminorm_sq_analytic(params_.b(), std::span<const ArctanTerm>(&term, 1), s);
  // Cross term 2 Re conj(u_bg^) v^ summed over the wavenumber grid.
  const auto field = SpectralField::from_samples(grid_, v_);
  const long n = static_cast<long>(grid_.size());
  double cross = 0.0;
  for (long k = -n / 2; k < n / 2; ++k) {
    if (k == 0) continue;
    const double xi = grid_.wavenumber(k);
    const cplx bg = arctan_transform(params_.b(), zeta_bg_, x0_, xi);
    cross += std::pow(std::abs(xi), 2.0 * s) * 2.0 * std::real(std::conj(bg) * field.coeff(k));
  }
  return total + cross * grid_.dxi() / (2.0 * std::numbers::pi);
}

Profile::TailReport Profile::check_tails(double tol) const {
  TailReport r;
  const double b = params_.b();
  r.v_left = v_.front();
  r.v_right = v_.back();
  r.u_left = background(grid_.node(0)) + v_.front();
  r.u_right = background(grid_.node(grid_.size() - 1)) + v_.back();
  std::ostringstream msg;
  if (std::max(std::abs(r.v_left), std::abs(r.v_right)) > tol * b) {
    r.ok = false;
    msg << "correction at the grid ends exceeds " << tol << " b (" << r.v_left << ", " << r.v_right << ")";
  }
  if (background_) {
    const double slack = b * (tol + zeta_bg_ / grid_.half_length() / std::numbers::pi);
    if (std::abs(r.u_left - b / 4.0) > slack || std::abs(r.u_right + b / 4.0) > slack) {
      if (!r.ok) msg << "; ";
      r.ok = false;
      msg << "u1 does not approach +-b/4 at the grid ends";
    }
  }
  r.message = msg.str();
  return r;
}

}  // namespace pn
