#include "pn/potential.hpp"

#include <algorithm>
#include <boost/math/interpolators/cardinal_cubic_b_spline.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace pn {

struct Potential::Spline {
  double u0;      // start of the stored period
  double shift;   // subtracted so that min W = 0
  boost::math::interpolators::cardinal_cubic_b_spline<double> s;
};

Potential Potential::frenkel(const PhysParams& params) { return {PotentialKind::frenkel, params, "frenkel"}; }

Potential Potential::from_table(const PhysParams& params, std::vector<double> u, std::vector<double> w) {
  if (u.size() != w.size()) throw InvalidInput("potential", "table columns differ in length");
  const double period = params.b() / 2.0;
  if (u.size() >= 2 && std::abs(u.back() - u.front() - period) <= 1e-9 * period) {
    u.pop_back();  // endpoint duplicates the first sample
    w.pop_back();
  }
  const std::size_t n = u.size();
  if (n < 8) throw InvalidInput("potential", "table needs at least 8 samples per period (got " + std::to_string(n) + ")");
  const double du = period / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(u[i] - (u[0] + static_cast<double>(i) * du)) > 1e-9 * period)
      throw InvalidInput("potential", "table samples must be uniformly spaced over exactly one period b/2");
  }
  // Three wrapped periods so the middle one is free of end effects.
  std::vector<double> wrapped;
  wrapped.reserve(3 * n + 1);
  for (int rep = 0; rep < 3; ++rep) wrapped.insert(wrapped.end(), w.begin(), w.end());
  wrapped.push_back(w[0]);
  auto spline = std::make_shared<Spline>(Spline{
      u[0], 0.0,
      boost::math::interpolators::cardinal_cubic_b_spline<double>(wrapped.begin(), wrapped.end(), u[0] - period, du)});
  double wmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 10000; ++i) {
    const double x = u[0] + period * i / 10000.0;
    wmin = std::min(wmin, spline->s(x));
  }
  spline->shift = wmin;
  Potential pot(PotentialKind::table, params, "table");
  pot.spline_ = std::move(spline);
  return pot;
}

Potential Potential::load_table(const PhysParams& params, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("potential", "cannot open table " + path.string());
  std::vector<double> u, w;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      if (line.find_first_of("0123456789") == std::string::npos || line.find('u') != std::string::npos) continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a, bval;
    if (!(ss >> a >> bval)) throw InvalidInput("potential", "malformed row in " + path.string() + ": " + line);
    u.push_back(a);
    w.push_back(bval);
  }
  auto pot = from_table(params, std::move(u), std::move(w));
  pot.name_ = "table:" + path.string();
  return pot;
}

Potential Potential::custom(const PhysParams& params, Callable f, std::string name) {
  Potential pot(PotentialKind::custom, params, std::move(name));
  pot.custom_ = std::move(f);
  return pot;
}

double Potential::eval(double u, int order) const {
  if (order < 0 || order > 2) throw std::invalid_argument("potential derivative order must be 0, 1 or 2");
  switch (kind_) {
    case PotentialKind::frenkel: {
      const double G = params_.G(), b = params_.b(), d = params_.d();
      const double k = 4.0 * std::numbers::pi / b;
      if (order == 0) return G * b * b / (4.0 * std::numbers::pi * std::numbers::pi * d) * (1.0 + std::cos(k * u));
      if (order == 1) return -G * b / (std::numbers::pi * d) * std::sin(k * u);
      return -4.0 * G / d * std::cos(k * u);
    }
    case PotentialKind::table: {
      const double p = period();
      double x = std::fmod(u - spline_->u0, p);
      if (x < 0) x += p;
      x += spline_->u0;
      if (order == 0) return spline_->s(x) - spline_->shift;
      if (order == 1) return spline_->s.prime(x);
      return spline_->s.double_prime(x);
    }
    case PotentialKind::custom:
      return custom_(u, order);
  }
  return 0.0;
}

std::vector<double> Potential::eval(const std::vector<double>& u, int order) const {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = eval(u[i], order);
  return out;
}

PotentialReport validate_potential(const Potential& pot) {
  const double b = pot.params().b();
  PotentialReport r;
  const double wm = pot.W(-b / 4.0), wp = pot.W(b / 4.0);
  const double wells = std::max(wm, wp);
  constexpr int samples = 10000;
  double gap = std::numeric_limits<double>::infinity();
  for (int i = 1; i < samples; ++i) {
    const double v = -b / 4.0 + (b / 2.0) * i / samples;
    gap = std::min(gap, pot.W(v) - wells);
  }
  r.min_interior_gap = gap;
  r.interior_above_wells = gap > 0.0;
  r.curvature_minus = pot.d2W(-b / 4.0);
  r.curvature_plus = pot.d2W(b / 4.0);
  r.positive_curvature = r.curvature_minus > 0.0 && r.curvature_plus > 0.0;
  r.well_difference = std::abs(wp - wm);
  r.wells_equal = r.well_difference <= 1e-12;
  return r;
}

}  // namespace pn
