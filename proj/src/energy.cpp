#include "pn/energy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pn/elastic.hpp"
#include "pn/spectral.hpp"

namespace pn {
namespace {

double dot_se(const LevelFields& s, const LevelFields& e, std::size_t j) {
  return s.s11[j] * e.e11[j] + s.s22[j] * e.e22[j] + 2.0 * s.s12[j] * e.e12[j];
}

// Weights of the piecewise-linear interpolant of nodal values over [-R, R].
std::vector<double> box_weights(const Grid1D& grid, double R) {
  std::vector<double> w(grid.size(), 0.0);
  const double h = grid.spacing();
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double xa = grid.node(j), xb = xa + h;
    const double s = std::max(xa, -R), e = std::min(xb, R);
    if (e <= s) continue;
    // int_s^e (xb - x)/h dx and int_s^e (x - xa)/h dx
    w[j] += ((xb - s) * (xb - s) - (xb - e) * (xb - e)) / (2.0 * h);
    w[j + 1] += ((e - xa) * (e - xa) - (s - xa) * (s - xa)) / (2.0 * h);
  }
  return w;
}

double nearest_well(double u, double b) {
  // wells at (2k + 1) b / 4
  return (2.0 * std::round((u / (b / 4.0) - 1.0) / 2.0) + 1.0) * b / 4.0;
}

}  // namespace

Perturbation Perturbation::bumps(const Grid1D& grid, const std::vector<Bump>& parts, std::string label) {
  Perturbation p{grid, std::vector<double>(grid.size(), 0.0), PerturbationKind::elastic_extension, std::move(label)};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    for (const auto& b : parts) p.phi1[j] += b.amplitude * std::exp(-(x - b.center) * (x - b.center) / (b.width * b.width));
  }
  return p;
}

double Perturbation::outer_max() const {
  double m = 0.0;
  for (std::size_t j = 0; j < grid.size(); ++j)
    if (std::abs(grid.node(j)) >= grid.half_length() / 2.0) m = std::max(m, std::abs(phi1[j]));
  return m;
}

Perturbation Perturbation::scaled(double factor) const {
  Perturbation p = *this;
  for (auto& x : p.phi1) x *= factor;
  return p;
}

std::vector<double> quadrature_levels(double y_min, double ratio, double y_max) {
  if (!(y_min > 0.0) || !(ratio > 1.0) || !(y_max > y_min)) throw InvalidInput("quadrature", "need 0 < y_min < y_max and ratio > 1");
  std::vector<double> y{0.0};
  for (double v = y_min; v < y_max; v *= ratio) y.push_back(v);
  if (y_max - y.back() < 1e-3 * (y.back() - y[y.size() - 2])) y.back() = y_max;
  else y.push_back(y_max);
  return y;
}

std::vector<double> trapezoid_weights(const std::vector<double>& y) {
  std::vector<double> w(y.size(), 0.0);
  for (std::size_t i = 0; i + 1 < y.size(); ++i) {
    const double d = 0.5 * (y[i + 1] - y[i]);
    w[i] += d;
    w[i + 1] += d;
  }
  return w;
}

double misfit_energy(const Profile& p, const Potential& pot) {
  const auto& grid = p.grid();
  const double b = p.params().b();
  const double L = grid.half_length();
  const auto u = p.u1();
  const double u_right = p.u1_right_end();
  double sum = 0.0, wmax = 0.0;
  for (double x : u) {
    const double w = pot.W(x);
    sum += w;
    wmax = std::max(wmax, w);
  }
  const double w_left = pot.W(u.front()), w_right = pot.W(u_right);
  wmax = std::max(wmax, w_right);
  if (wmax == 0.0) return 0.0;
  if (std::max(w_left, w_right) > 1e-2 * wmax)
    throw MisfitDivergence("misfit integrand does not decay at the grid ends");
  const double h = grid.spacing();
  const double trap = h * (sum - 0.5 * w_left + 0.5 * w_right);

  // Tails: u1 - well ~ c / x, W ~ (1/2) W''(well) (c/x)^2.
  const double well_r = nearest_well(u_right, b), well_l = nearest_well(u.front(), b);
  double cr = 0.0, cl = 0.0;
  int nr = 0, nl = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (x >= L / 4.0 && x <= L / 2.0) {
      cr += x * (u[j] - well_r);
      ++nr;
    } else if (x <= -L / 4.0 && x >= -L / 2.0) {
      cl += x * (u[j] - well_l);
      ++nl;
    }
  }
  cr = nr ? cr / nr : 0.0;
  cl = nl ? cl / nl : 0.0;
  const double tails = 0.5 * pot.d2W(well_r) * cr * cr / L + 0.5 * pot.d2W(well_l) * cl * cl / L;
  return trap + tails;
}

ReducedParts reduced_parts(const Perturbation& phi, const Profile& p, const Potential& pot) {
  if (!(phi.grid == p.grid())) throw InvalidInput("phi", "perturbation and profile grids differ");
  const auto& grid = p.grid();
  const double c0 = p.params().c0();
  const auto lphi = apply_half_laplacian(grid, phi.phi1);
  const auto lu = p.half_laplacian();
  const auto u = p.u1();
  double mis = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) mis += pot.W(u[j] + phi.phi1[j]) - pot.W(u[j]);
  return {0.5 * c0 * inner(grid, phi.phi1, lphi), c0 * inner(grid, phi.phi1, lu), grid.spacing() * mis};
}

double reduced_perturbed_energy(const Perturbation& phi, const Profile& p, const Potential& pot) {
  return reduced_parts(phi, p, pot).total();
}

ElasticParts elastic_parts(const Perturbation& phi, const Profile& p, const QuadratureSpec& q) {
  if (!(phi.grid == p.grid())) throw InvalidInput("phi", "perturbation and profile grids differ");
  const auto& grid = p.grid();
  const auto ys = quadrature_levels(q.y_min_over_zeta * p.params().zeta(), q.ratio, q.y_max_over_L * grid.half_length());
  const auto wy = trapezoid_weights(ys);
  const Extension ext_phi(Profile::correction_only(grid, p.params(), phi.phi1));
  const Extension ext_u(p);
  const double h = grid.spacing();
  double E = 0.0, C = 0.0, top = 0.0, bottom = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto fp = ext_phi.level(ys[i], false);
    const auto fu = ext_u.level(ys[i], false);
    double e = 0.0, c = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
      e += dot_se(fp, fp, j);
      c += dot_se(fu, fp, j);
    }
    E += wy[i] * h * e;
    C += wy[i] * h * c;
    double m = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) m = std::max({m, std::abs(fp.s11[j]), std::abs(fp.s12[j]), std::abs(fp.s22[j])});
    if (i == 0) bottom = m;
    if (i + 1 == ys.size()) top = m;
  }
  // Upper half only; the mirror image contributes the same amount.
  return {E, 2.0 * C, top > 1e-6 * bottom};
}

double perturbed_total_energy(const Perturbation& phi, const Profile& p, const Potential& pot, const QuadratureSpec& q) {
  const auto e = elastic_parts(phi, p, q);
  return e.E_els + e.cross_els + reduced_parts(phi, p, pot).misfit_diff;
}

CrossTerms cross_terms(const Perturbation& phi, const Profile& p, const QuadratureSpec& q) {
  const auto& grid = p.grid();
  const auto lu = p.half_laplacian();
  return {elastic_parts(phi, p, q).cross_els, p.params().c0() * inner(grid, phi.phi1, lu)};
}

double elastic_energy_box(const Profile& p, double R, const QuadratureSpec& q) {
  const auto& grid = p.grid();
  if (!(R > 0.0) || R > grid.half_length() / 2.0)
    throw InvalidInput("R", "box radius must lie in (0, L/2]");
  const double ymin = q.y_min_over_zeta * p.params().zeta();
  if (R <= ymin) throw InvalidInput("R", "box radius below the first quadrature level");
  const auto ys = quadrature_levels(ymin, q.ratio, R);
  const auto wy = trapezoid_weights(ys);
  const auto wx = box_weights(grid, R);
  const Extension ext(p);
  double E = 0.0;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const auto f = ext.level(ys[i], false);
    double row = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
      if (wx[j] != 0.0) row += wx[j] * dot_se(f, f, j);
    E += wy[i] * row;
  }
  return E;  // 2 half-planes x 1/2
}

EnergyBreakdown energy_breakdown(const Perturbation& phi, const Profile& p, const Potential& pot, double box_radius,
                                 const QuadratureSpec& q) {
  EnergyBreakdown e;
  e.E_mis = misfit_energy(p, pot);
  const auto r = reduced_parts(phi, p, pot);
  e.E_gamma_e_pert = r.quadratic;
  e.cross_gamma = r.cross_gamma;
  e.misfit_diff = r.misfit_diff;
  e.E_hat_gamma = r.total();
  const auto el = elastic_parts(phi, p, q);
  e.E_els_pert = el.E_els;
  e.cross_els = el.cross_els;
  e.box_warning = el.box_warning;
  e.E_hat_total = el.E_els + el.cross_els + r.misfit_diff;
  e.box_radius = box_radius;
  if (box_radius > 0.0) e.E_els_box = elastic_energy_box(p, box_radius, q);
  return e;
}

std::vector<Perturbation> seeded_perturbations(const Grid1D& grid, const PhysParams& params, std::uint64_t seed,
                                               int count, int out_of_range) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double b = params.b(), z = params.zeta();
  std::vector<Perturbation> out;
  for (int i = 0; i < count; ++i) {
    const bool big = i >= count - out_of_range;
    const int parts = 1 + static_cast<int>(unit(gen) * 3.0) % 3;
    std::vector<Perturbation::Bump> bumps;
    for (int k = 0; k < parts; ++k) {
      const double sign = unit(gen) < 0.5 ? -1.0 : 1.0;
      const double amp = big ? (0.3 + 0.3 * unit(gen)) * b : 0.15 * b * unit(gen);
      const double center = (unit(gen) * 8.0 - 4.0) * z;
      const double width = (0.5 + 2.5 * unit(gen)) * z;
      bumps.push_back({sign * amp, center, width});
    }
    auto p = Perturbation::bumps(grid, bumps, (big ? "out_of_range_" : "bump_") + std::to_string(i));
    if (p.outer_max() > 1e-8 * b)
      throw InvalidInput("L", "grid too short for the seeded perturbations to decay");
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace pn
