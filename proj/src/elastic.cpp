#include "pn/elastic.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <cmath>
#include <numbers>

#include "pn/spectral.hpp"

namespace pn {

YLevels::YLevels(std::vector<double> v, bool m) : values(std::move(v)), mirrored(m) {
  if (values.empty()) throw InvalidInput("ylevels", "at least one level is required");
  if (!(values.front() > 0.0)) throw InvalidInput("ylevels", "levels must be positive");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw InvalidInput("ylevels", "levels must be strictly increasing");
}

YLevels YLevels::geometric(double y_min, double y_max, std::size_t count, bool mirrored) {
  if (!(y_min > 0.0) || !(y_max > y_min) || count < 2)
    throw InvalidInput("ylevels", "need 0 < y_min < y_max and at least two levels");
  std::vector<double> v(count);
  const double r = std::log(y_max / y_min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = y_min * std::exp(r * static_cast<double>(i));
  v.back() = y_max;
  return {std::move(v), mirrored};
}

StressField::Strain StressField::strain(bool upper) const {
  const StressSide& s = upper ? plus : minus;
  const double G = params.G(), nu = params.nu();
  Strain e{Field2D(s.s11.rows, s.s11.cols), Field2D(s.s11.rows, s.s11.cols), Field2D(s.s11.rows, s.s11.cols)};
  for (std::size_t k = 0; k < s.s11.data.size(); ++k) {
    e.e11.data[k] = ((1.0 - nu) * s.s11.data[k] - nu * s.s22.data[k]) / (2.0 * G);
    e.e22.data[k] = ((1.0 - nu) * s.s22.data[k] - nu * s.s11.data[k]) / (2.0 * G);
    e.e12.data[k] = s.s12.data[k] / (2.0 * G);
  }
  return e;
}

PointFields analytic_fields(const PhysParams& params, double x, double y, int side) {
  return analytic_fields(params, params.zeta(), x, y, side);
}

PointFields analytic_fields(const PhysParams& params, double zeta, double x, double y, int side) {
  const double G = params.G(), nu = params.nu(), b = params.b();
  const double sg = y > 0.0 ? 1.0 : (y < 0.0 ? -1.0 : (side >= 0 ? 1.0 : -1.0));
  const double Y = y + sg * zeta;
  const double r2 = x * x + Y * Y;
  const double c = b / (2.0 * std::numbers::pi);
  PointFields f;
  f.u1 = c * (-std::atan(x / Y) + x * y / (2.0 * (1.0 - nu) * r2));
  f.u2 = -c * ((1.0 - 2.0 * nu) / (4.0 * (1.0 - nu)) * std::log(r2) +
               (x * x - y * y + zeta * zeta) / (4.0 * (1.0 - nu) * r2));
  const double pref = G * b / (2.0 * std::numbers::pi * (1.0 - nu));
  f.s11 = pref * (-(3.0 * y + 2.0 * sg * zeta) / r2 + 2.0 * y * Y * Y / (r2 * r2));
  f.s12 = pref * (x / r2 - 2.0 * x * y * Y / (r2 * r2));
  f.s22 = pref * (-y / r2 + 2.0 * x * x * y / (r2 * r2));
  f.s33 = pref * (-2.0 * nu * Y / r2);
  f.e11 = ((1.0 - nu) * f.s11 - nu * f.s22) / (2.0 * G);
  f.e22 = ((1.0 - nu) * f.s22 - nu * f.s11) / (2.0 * G);
  f.e12 = f.s12 / (2.0 * G);
  return f;
}

Extension::Extension(const Profile& p) : p_(p), spectrum_(RealFft(p.grid().size()).forward(p.v())) {}

LevelFields Extension::level(double y, bool displacements) const {
  if (y < 0.0) throw InvalidInput("y", "level must be on the upper side (y >= 0)");
  const auto& grid = p_.grid();
  const auto& prm = p_.params();
  const double G = prm.G(), nu = prm.nu(), lam = prm.lame_lambda(), k = prm.kappa();
  const std::size_t n = grid.size(), nh = n / 2 + 1, nyq = n / 2;
  RealFft fft(n);

  std::vector<cplx> su1(nh), su2(nh), se11(nh), se22(nh), se12(nh), ss22(nh);
  for (std::size_t m = 0; m < nh; ++m) {
    const double a = std::abs(grid.fft_wavenumber(m));
    const double t = a * y;
    const double e = std::exp(-t);
    const cplx A = spectrum_[m];
    su1[m] = A * ((1.0 - k * t) * e);
    if (m == 0 || m == nyq) continue;
    const double P = (1.0 - k * t) * e;
    const double dP = -a * (1.0 + k - k * t) * e;
    const double Q = -k * ((1.0 - 2.0 * nu) + t) * e;
    const double dQ = -k * a * (2.0 * nu - t) * e;
    const cplx I(0.0, 1.0);
    su2[m] = A * I * Q;
    se11[m] = A * I * (a * P);
    se22[m] = A * I * dQ;
    se12[m] = A * (0.5 * (dP - a * Q));
    ss22[m] = A * I * (2.0 * G * k * a * t * e);
  }

  LevelFields out;
  if (displacements) {
    out.u1 = fft.inverse(su1);
    out.u2 = fft.inverse(su2);
  }
  out.e11 = fft.inverse(se11);
  out.e22 = fft.inverse(se22);
  out.e12 = fft.inverse(se12);
  out.s22 = fft.inverse(ss22);
  out.s11.resize(n);
  out.s12.resize(n);
  out.s33.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double tr = out.e11[j] + out.e22[j];
    out.s11[j] = 2.0 * G * out.e11[j] + lam * tr;
    out.s12[j] = 2.0 * G * out.e12[j];
    out.s33[j] = lam * tr;
  }
  if (p_.has_background()) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto f = analytic_fields(prm, p_.zeta_bg(), grid.node(j) - p_.x0(), y, +1);
      if (displacements) {
        out.u1[j] += f.u1;
        out.u2[j] += f.u2;
      }
      out.e11[j] += f.e11;
      out.e22[j] += f.e22;
      out.e12[j] += f.e12;
      out.s11[j] += f.s11;
      out.s12[j] += f.s12;
      out.s22[j] += f.s22;
      out.s33[j] += f.s33;
    }
  }
  return out;
}

HalfPlaneField extend_to_half_planes(const Profile& p, const YLevels& yl) {
  const std::size_t rows = yl.values.size(), cols = p.grid().size();
  HalfPlaneField h{p.grid(), yl, Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols)};
  const Extension ext(p);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto f = ext.level(yl.values[i]);
    for (std::size_t j = 0; j < cols; ++j) {
      h.u1_plus(i, j) = f.u1[j];
      h.u2_plus(i, j) = f.u2[j];
      h.u1_minus(i, j) = -f.u1[j];
      h.u2_minus(i, j) = f.u2[j];
    }
  }
  return h;
}

StressField stress_field(const Profile& p, const YLevels& yl) {
  const std::size_t rows = yl.values.size(), cols = p.grid().size();
  auto side = [&] { return StressSide{Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols), Field2D(rows, cols)}; };
  StressField s{p.grid(), yl, p.params(), side(), side()};
  const Extension ext(p);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto f = ext.level(yl.values[i], false);
    for (std::size_t j = 0; j < cols; ++j) {
      s.plus.s11(i, j) = f.s11[j];
      s.plus.s12(i, j) = f.s12[j];
      s.plus.s22(i, j) = f.s22[j];
      s.plus.s33(i, j) = f.s33[j];
      s.minus.s11(i, j) = -f.s11[j];
      s.minus.s12(i, j) = f.s12[j];
      s.minus.s22(i, j) = -f.s22[j];
      s.minus.s33(i, j) = -f.s33[j];
    }
  }
  return s;
}

Traction dtn_traction(const Profile& p) {
  Traction t;
  t.sigma12 = p.half_laplacian();
  const double f = -p.params().G() / (1.0 - p.params().nu());
  for (auto& x : t.sigma12) x *= f;
  t.sigma22.assign(t.sigma12.size(), 0.0);
  return t;
}

namespace {

// int_0^inf (alpha + beta t)^2 e^{-2t} dt
double poly_exp_integral(double alpha, double beta) {
  return alpha * alpha / 2.0 + alpha * beta / 2.0 + beta * beta / 4.0;
}

}  // namespace

LambdaSeminorm lambda_seminorm(const Profile& p, double s, int m) {
  if (s < 1.0) throw InvalidInput("s", "Lambda seminorm needs s >= 1");
  if (m < 0 || m > static_cast<int>(std::floor(s))) throw InvalidInput("m", "derivative order must lie in [0, floor(s)]");
  const auto& prm = p.params();
  const auto& grid = p.grid();
  const double k = prm.kappa(), nu = prm.nu(), b = prm.b();
  const double F = poly_exp_integral(1.0 + k * m, -k) + k * k * poly_exp_integral((1.0 - 2.0 * nu) - m, 1.0);

  const auto field = SpectralField::from_samples(grid, p.v());
  const long n = static_cast<long>(grid.size());
  double sum = 0.0;
  for (long kk = -n / 2; kk < n / 2; ++kk) {
    if (kk == 0) continue;
    const double xi = grid.wavenumber(kk);
    const double a = std::abs(xi);
    const cplx c = field.coeff(kk);
    double w = std::norm(c);
    if (p.has_background()) w += 2.0 * std::real(std::conj(arctan_transform(b, p.zeta_bg(), p.x0(), xi)) * c);
    sum += std::pow(a, 2.0 * s - 1.0) * w;
  }
  double value = 2.0 * F * sum * grid.dxi() / (2.0 * std::numbers::pi);
  if (p.has_background()) {
    if (s <= 1.0) throw SeminormDivergence("Lambda seminorm of an arctan background needs s > 1");
    value += 2.0 * F / std::numbers::pi * (b * b / 4.0) * std::tgamma(2.0 * s - 2.0) /
             std::pow(2.0 * p.zeta_bg(), 2.0 * s - 2.0);
  }
  const double trace = p.hs_seminorm_sq(s - 0.5);
  return {value, trace, trace > 0.0 ? std::sqrt(value / trace) : 0.0};
}

ModeProfile extension_mode_profile(const PhysParams& params) {
  const double k = params.kappa(), nu = params.nu();
  return {"extension",
          [k](double t) { return (1.0 - k * t) * std::exp(-t); },
          [k](double t) { return -(1.0 + k - k * t) * std::exp(-t); },
          [k, nu](double t) { return -k * ((1.0 - 2.0 * nu) + t) * std::exp(-t); },
          [k, nu](double t) { return -k * (2.0 * nu - t) * std::exp(-t); }};
}

double mode_energy_functional(const PhysParams& params, const ModeProfile& mp) {
  const double G = params.G(), lam = params.lame_lambda();
  auto integrand = [&](double t) {
    const double f = mp.f(t), df = mp.df(t), g = mp.g(t), dg = mp.dg(t);
    return G * (f * f + dg * dg + 0.5 * (df - g) * (df - g)) + 0.5 * lam * (f + dg) * (f + dg);
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  return integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-12);
}

double trace_field_energy(const Grid1D& grid, const PhysParams& params, std::span<const double> trace,
                          const ModeProfile& mp) {
  const double I = mode_energy_functional(params, mp);
  const auto spec = RealFft(grid.size()).forward(trace);
  const double h = grid.spacing();
  const std::size_t nyq = grid.size() / 2;
  double sum = 0.0;
  for (std::size_t m = 1; m <= nyq; ++m) {
    const double mult = (m == nyq) ? 1.0 : 2.0;
    sum += mult * std::abs(grid.fft_wavenumber(m)) * std::norm(h * spec[m]);
  }
  return 2.0 * I * sum * grid.dxi() / (2.0 * std::numbers::pi);
}

double equilibrium_residual(const Profile& p, double y, double dy) {
  if (!(dy > 0.0) || !(y - dy > 0.0)) throw InvalidInput("dy", "need 0 < dy < y");
  const Extension ext(p);
  const auto lo = ext.level(y - dy, false), mid = ext.level(y, false), hi = ext.level(y + dy, false);
  const auto& grid = p.grid();
  const std::size_t n = grid.size();
  const double h = grid.spacing(), L = grid.half_length();
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(grid.node(j)) > L / 4.0) continue;
    const std::size_t jp = (j + 1) % n, jm = (j + n - 1) % n;
    const double d1 = (mid.s11[jp] - mid.s11[jm]) / (2.0 * h) + (hi.s12[j] - lo.s12[j]) / (2.0 * dy);
    const double d2 = (mid.s12[jp] - mid.s12[jm]) / (2.0 * h) + (hi.s22[j] - lo.s22[j]) / (2.0 * dy);
    worst = std::max({worst, std::abs(d1), std::abs(d2)});
  }
  return worst;
}

}  // namespace pn
