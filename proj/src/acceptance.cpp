#include "pn/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "pn/dynamics.hpp"
#include "pn/elastic.hpp"
#include "pn/energy.hpp"
#include "pn/spectral.hpp"
#include "pn/static_solver.hpp"

namespace pn {

bool AcceptanceReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.pass; });
}

namespace {

std::string num(double x) {
  std::ostringstream ss;
  ss.precision(8);
  ss << x;
  return ss.str();
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

class Suite {
 public:
  explicit Suite(const AcceptanceOptions& o)
      : opts_(o), prm_(o.params), grid_(o.L_over_zeta * o.params.zeta(), o.N), pot_(Potential::frenkel(o.params)) {}

  AcceptanceReport run() {
    const std::vector<std::pair<std::string, std::function<void()>>> items = {
        {"closed-form residual", [this] { c1(); }},
        {"static solve recovery", [this] { c2(); }},
        {"Sobolev seminorm closed form and sharpness", [this] { c3(); }},
        {"far-field decay rate", [this] { c4(); }},
        {"elastic extension oracle", [this] { c5(); }},
        {"Dirichlet-to-Neumann identity", [this] { c6(); }},
        {"energy relation and cross terms", [this] { c7(); }},
        {"minimizer property and extension optimality", [this] { c8(); }},
        {"logarithmic growth of the boxed elastic energy", [this] { c9(); }},
        {"gradient-flow dynamics", [this] { c10(); }},
        {"misfit energy closed form", [this] { c11(); }},
        {"Burgers vector accounting", [this] { c12(); }},
    };
    for (std::size_t i = 0; i < items.size(); ++i) {
      const int id = static_cast<int>(i) + 1;
      if (!opts_.only.empty() && std::find(opts_.only.begin(), opts_.only.end(), id) == opts_.only.end()) continue;
      current_ = id;
      const auto t0 = std::chrono::steady_clock::now();
      bool ok = true;
      try {
        items[i].second();
      } catch (const std::exception& e) {
        add("exception: " + std::string(e.what()), "no exception", 1.0, 0.0, false);
      }
      for (const auto& c : report_.checks)
        if (c.criterion == id && c.gated && !c.pass) ok = false;
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      report_.criteria.push_back({id, items[i].first, ok, secs});
    }
    return report_;
  }

 private:
  void add(std::string name, std::string expected, double actual, double tol, bool pass, bool gated = true) {
    report_.checks.push_back({current_, std::move(name), std::move(expected), actual, tol, pass, gated});
  }
  // |actual| <= tol
  void add_le(std::string name, double actual, double tol) {
    add(std::move(name), "<= " + num(tol), actual, tol, actual <= tol);
  }
  void add_rel(std::string name, double actual, double expected, double rel) {
    const double err = std::abs(actual - expected) / std::abs(expected);
    add(std::move(name), num(expected) + " +- " + num(rel * 100) + "%", actual, rel, err <= rel);
  }

  Profile analytic() const { return Profile::analytic(grid_, prm_); }

  const SolveResult& solved() {
    if (!solved_) {
      std::vector<double> init(grid_.size());
      for (std::size_t j = 0; j < grid_.size(); ++j) init[j] = -prm_.b() / 4.0 * std::tanh(grid_.node(j) / prm_.zeta());
      solved_ = solve_static(Profile::from_samples(grid_, prm_, init, prm_.zeta()), pot_);
    }
    return *solved_;
  }

  void c1() {
    add_le("residual L_inf of the arctan profile [G b/d]", residual(analytic(), pot_).linf / prm_.stress_scale(), 1e-10);
  }

  void c2() {
    const auto& s = solved();
    add_le("final residual L_inf [G b/d]", s.residual.linf / prm_.stress_scale(), 1e-10);
    const auto c = center_profile(s.profile);
    const auto u = c.centered.u1(), ua = analytic().u1();
    double err = 0.0;
    for (std::size_t j = 0; j < grid_.size(); ++j)
      if (std::abs(grid_.node(j)) <= 20.0 * prm_.zeta()) err = std::max(err, std::abs(u[j] - ua[j]));
    add_le("max |u1 - u_bg| on |x| <= 20 zeta after centering [b]", err / prm_.b(), 1e-3);
    const auto us = s.profile.u1();
    add("monotone decreasing", "true", s.monotone ? 1.0 : 0.0, 0.0, s.monotone && is_monotone_decreasing(us));
    double odd = 0.0;
    for (std::size_t j = 1; j < grid_.size(); ++j) odd = std::max(odd, std::abs(us[j] + us[grid_.size() - j]));
    add_le("max |u1(x) + u1(-x)| [b]", odd / prm_.b(), 1e-8);
  }

  void c3() {
    const double b = prm_.b(), z = prm_.zeta();
    const ArctanTerm single{1.0, z};
    for (double s : {0.75, 1.0, 1.5}) {
      const double exact = b * b * std::tgamma(2 * s - 1) / (4 * std::numbers::pi * std::pow(2 * z, 2 * s - 1));
      add_rel("analytic seminorm^2, s = " + num(s), hs_seminorm_sq_analytic(b, {&single, 1}, s), exact, 1e-3);
    }
    // Decaying difference u_bg(zeta) - u_bg(2 zeta) on a long grid.
    const Grid1D g(400.0 * z, 8192);
    const ArctanTerm diff[2] = {{1.0, z}, {-1.0, 2.0 * z}};
    std::vector<double> f(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double x = g.node(j);
      f[j] = -b / (2 * std::numbers::pi) * (std::atan(x / z) - std::atan(x / (2 * z)));
    }
    for (double s : {0.75, 1.0, 1.5}) {
      double exact = 0.0;
      for (const auto& ti : diff)
        for (const auto& tj : diff) exact += ti.weight * tj.weight / std::pow(ti.zeta + tj.zeta, 2 * s - 1);
      exact *= b * b * std::tgamma(2 * s - 1) / (4 * std::numbers::pi);
      const double an = hs_seminorm_sq_analytic(b, diff, s);
      add_rel("analytic seminorm^2 of the difference, s = " + num(s), an, exact, 1e-3);
      const double gr = hs_seminorm_sq(g, f, s);
      const double err = std::abs(gr - an) / an;
      const bool gated = s <= 1.0;
      add("grid seminorm^2 of the difference, s = " + num(s) + (gated ? "" : " (reported only)"),
          num(an) + " +- 1%", gr, 1e-2, err <= 1e-2, gated);
    }
    bool threw = false;
    try {
      hs_seminorm_sq_analytic(b, {&single, 1}, 0.5);
    } catch (const SeminormDivergence&) {
      threw = true;
    }
    add("s = 1/2 raises the divergence error", "throws", threw ? 1.0 : 0.0, 0.0, threw);
  }

  void c4() {
    const auto c = center_profile(solved().profile);
    const auto dc = decay_coefficients(c.centered);
    const double ref = prm_.b() * prm_.zeta() / (2 * std::numbers::pi);
    add_rel("c_plus", dc.c_plus, ref, 0.05);
    add_rel("c_minus", dc.c_minus, ref, 0.05);
  }

  void c5() {
    const double b = prm_.b(), z = prm_.zeta(), nu = prm_.nu();
    const double z2 = 2.0 * z;
    std::vector<double> v(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      const double x = grid_.node(j);
      v[j] = -b / (2 * std::numbers::pi) * (std::atan(x / z) - std::atan(x / z2));
    }
    const Profile diff = Profile::correction_only(grid_, prm_, v);
    const auto yl = YLevels::geometric(0.1 * z, 10.0 * z, 21, true);
    const auto hp = extend_to_half_planes(diff, yl);
    const auto sf = stress_field(diff, yl);

    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < grid_.size(); ++j)
      if (std::abs(grid_.node(j)) <= 10.0 * z) cols.push_back(j);
    const char* names[6] = {"u1", "u2", "sigma11", "sigma12", "sigma22", "sigma33"};
    std::vector<double> num_v[6], ref_v[6];
    for (int side : {+1, -1}) {
      for (std::size_t i = 0; i < yl.values.size(); ++i) {
        const double y = side * yl.values[i];
        const auto& S = side > 0 ? sf.plus : sf.minus;
        for (std::size_t j : cols) {
          const double x = grid_.node(j);
          const auto a = analytic_fields(prm_, z, x, y), c = analytic_fields(prm_, z2, x, y);
          const double r[6] = {a.u1 - c.u1, a.u2 - c.u2, a.s11 - c.s11, a.s12 - c.s12, a.s22 - c.s22, a.s33 - c.s33};
          const double n[6] = {side > 0 ? hp.u1_plus(i, j) : hp.u1_minus(i, j),
                               side > 0 ? hp.u2_plus(i, j) : hp.u2_minus(i, j),
                               S.s11(i, j), S.s12(i, j), S.s22(i, j), S.s33(i, j)};
          for (int k = 0; k < 6; ++k) {
            num_v[k].push_back(n[k]);
            ref_v[k].push_back(r[k]);
          }
        }
      }
    }
    // u2 is defined up to an additive constant: remove the fitted offset.
    double offset = 0.0;
    for (std::size_t i = 0; i < num_v[1].size(); ++i) offset += num_v[1][i] - ref_v[1][i];
    offset /= static_cast<double>(num_v[1].size());
    for (auto& x : num_v[1]) x -= offset;
    for (int k = 0; k < 6; ++k)
      add_le(std::string("relative max error of ") + names[k] + " on |x| <= 10 zeta, zeta/10 <= |y| <= 10 zeta",
             max_abs_diff(num_v[k], ref_v[k]) / max_abs(ref_v[k]), 1e-3);

    // Plane strain and slip-plane conditions on the solved profile.
    const auto& p = solved().profile;
    const auto st = stress_field(p, yl);
    double worst = 0.0, scale = 0.0;
    for (const StressSide* S : {&st.plus, &st.minus})
      for (std::size_t k = 0; k < S->s11.data.size(); ++k) {
        worst = std::max(worst, std::abs(S->s33.data[k] - nu * (S->s11.data[k] + S->s22.data[k])));
        scale = std::max({scale, std::abs(S->s11.data[k]), std::abs(S->s22.data[k]), std::abs(S->s33.data[k])});
      }
    add_le("max |sigma33 - nu (sigma11 + sigma22)| / max |sigma|", worst / scale, 1e-10);
    const auto gamma = Extension(p).level(0.0);
    add("max |sigma22| on the slip plane", "0 exactly", max_abs(gamma.s22), 0.0, max_abs(gamma.s22) == 0.0);
    const auto e = extend_to_half_planes(p, yl);
    bool mirror = true;
    for (std::size_t k = 0; k < e.u1_plus.data.size(); ++k)
      mirror = mirror && e.u1_minus.data[k] == -e.u1_plus.data[k] && e.u2_minus.data[k] == e.u2_plus.data[k];
    for (std::size_t k = 0; k < st.plus.s11.data.size(); ++k)
      mirror = mirror && st.minus.s11.data[k] == -st.plus.s11.data[k] && st.minus.s12.data[k] == st.plus.s12.data[k] &&
               st.minus.s22.data[k] == -st.plus.s22.data[k] && st.minus.s33.data[k] == -st.plus.s33.data[k];
    add("mirror symmetry u1-(x,-y) = -u1+(x,y), u2-(x,-y) = u2+(x,y)", "exact", mirror ? 1.0 : 0.0, 0.0, mirror);
  }

  void c6() {
    const auto& p = solved().profile;
    const auto t = dtn_traction(p);
    const auto u = p.u1();
    double minus = 0.0, plus = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
      minus = std::max(minus, std::abs(2.0 * t.sigma12[j] - pot_.dW(u[j])));
      plus = std::max(plus, std::abs(2.0 * t.sigma12[j] + pot_.dW(u[j])));
    }
    add_le("max |2 sigma12 - W'(u1)| [G b/d]", minus / prm_.stress_scale(), 1e-6);
    add("max |2 sigma12 + W'(u1)| [G b/d] (sign variant, reported only)", "-", plus / prm_.stress_scale(), 0.0,
        plus / prm_.stress_scale() <= 1e-6, false);
    add_le("max sigma22 on the slip plane", max_abs(t.sigma22), 0.0);
    // sigma12 at x = zeta: closed-form background plus trigonometric interpolation of the correction.
    const double z = prm_.zeta();
    const auto lv = apply_half_laplacian(grid_, p.v());
    const long j0 = std::lround((z + grid_.half_length()) / grid_.spacing());
    const double node = grid_.node(static_cast<std::size_t>(j0));
    const auto shifted = fourier_shift(grid_, lv, z - node);
    const double s12 = -prm_.G() / (1.0 - prm_.nu()) * (p.background_half_laplacian(z) + shifted[static_cast<std::size_t>(j0)]);
    add("sigma12 at x = zeta", num(1.0 / (2 * std::numbers::pi)) + " +- 1e-4", s12, 1e-4,
        std::abs(s12 - 1.0 / (2 * std::numbers::pi)) <= 1e-4);
  }

  void c7() {
    const auto& p = solved().profile;
    const double floor = 1e-3 * prm_.energy_scale();
    const auto perts = seeded_perturbations(grid_, prm_, opts_.seed, 10, 3);
    double worst_e = 0.0, worst_c = 0.0;
    for (const auto& phi : perts) {
      const auto r = reduced_parts(phi, p, pot_);
      const auto e = elastic_parts(phi, p);
      const double Eg = r.total();
      const double Et = e.E_els + e.cross_els + r.misfit_diff;
      worst_e = std::max(worst_e, std::abs(Et - Eg) / std::max(std::abs(Eg), floor));
      worst_c = std::max(worst_c, std::abs(e.cross_els - r.cross_gamma) / std::max(std::abs(r.cross_gamma), floor));
    }
    add_le("max |E_total - E_Gamma| / max(|E_Gamma|, 1e-3) over 10 perturbations", worst_e, 1e-2);
    add_le("max |C_els - C_Gamma| / max(|C_Gamma|, 1e-3) over 10 perturbations", worst_c, 1e-2);
  }

  void c8() {
    const auto& p = solved().profile;
    const auto perts = seeded_perturbations(grid_, prm_, opts_.seed + 1, 20, 6);
    const auto u = p.u1();
    double lowest = std::numeric_limits<double>::infinity();
    int outside = 0;
    for (const auto& phi : perts) {
      lowest = std::min(lowest, reduced_perturbed_energy(phi, p, pot_));
      for (std::size_t j = 0; j < u.size(); ++j)
        if (std::abs(u[j] + phi.phi1[j]) > prm_.b() / 4.0) {
          ++outside;
          break;
        }
    }
    add("min E_Gamma over 20 perturbations [G b^2/d]", ">= -1e-8", lowest / prm_.energy_scale(), 1e-8,
        lowest / prm_.energy_scale() >= -1e-8);
    add("perturbations leaving [-b/4, b/4]", ">= 1", outside, 1.0, outside >= 1);

    const double k = prm_.kappa(), nu = prm_.nu();
    const auto ext = extension_mode_profile(prm_);
    auto Pf = [k](double t) { return (1.0 - k * t) * std::exp(-t); };
    auto dPf = [k](double t) { return -(1.0 + k - k * t) * std::exp(-t); };
    auto Qf = [k, nu](double t) { return -k * ((1.0 - 2.0 * nu) + t) * std::exp(-t); };
    auto dQf = [k, nu](double t) { return -k * (2.0 * nu - t) * std::exp(-t); };
    auto ex = [](double t) { return std::exp(-t); };
    auto dex = [](double t) { return -std::exp(-t); };
    auto zero = [](double) { return 0.0; };
    const std::vector<ModeProfile> competitors = {
        {"harmonic u1, u2 = 0", ex, dex, zero, zero},
        {"extension u1, u2 = 0", Pf, dPf, zero, zero},
        {"harmonic u1, extension u2", ex, dex, Qf, dQf},
        {"extension stretched by 2 in y", [&](double t) { return Pf(t / 2); }, [&](double t) { return dPf(t / 2) / 2; },
         [&](double t) { return Qf(t / 2); }, [&](double t) { return dQf(t / 2) / 2; }},
        {"extension with u2 scaled by 1.2", Pf, dPf, [&](double t) { return 1.2 * Qf(t); },
         [&](double t) { return 1.2 * dQf(t); }},
    };
    const auto& trace = perts.front().phi1;
    const double e_ext = trace_field_energy(grid_, prm_, trace, ext);
    double margin = std::numeric_limits<double>::infinity();
    for (const auto& c : competitors) margin = std::min(margin, trace_field_energy(grid_, prm_, trace, c) - e_ext);
    add("min over 5 competitors of E(competitor) - E(extension)", "> 0", margin, 0.0, margin > 0.0);
  }

  void c9() {
    const double z = prm_.zeta();
    const std::vector<double> radii = {5 * z, 10 * z, 20 * z, 40 * z};
    auto fit = [&](const Grid1D& g) {
      const Profile p = Profile::analytic(g, prm_);
      std::vector<double> x, y;
      for (double R : radii) {
        x.push_back(std::log(R));
        y.push_back(elastic_energy_box(p, R));
      }
      const double n = static_cast<double>(x.size());
      double mx = 0, my = 0;
      for (std::size_t i = 0; i < x.size(); ++i) mx += x[i] / n, my += y[i] / n;
      double sxy = 0, sxx = 0, syy = 0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
      }
      return std::pair{sxy / sxx, sxy * sxy / (sxx * syy)};
    };
    const auto [slope, r2] = fit(grid_);
    const auto [slope_coarse, r2_coarse] = fit(Grid1D(grid_.half_length(), grid_.size() / 2));
    add("regression R^2 of E_box vs ln R", ">= 0.999", r2, 0.999, r2 >= 0.999);
    add_rel("slope at N/2 vs slope at N", slope_coarse, slope, 0.05);
    add("slope (reported only)", num(prm_.energy_scale() / (4 * std::numbers::pi * (1 - prm_.nu()))) + " asymptotically",
        slope, 0.0, true, false);
  }

  DynamicsState bump_state() const {
    const double z = prm_.zeta();
    std::vector<double> v(grid_.size());
    for (std::size_t j = 0; j < grid_.size(); ++j) {
      const double x = grid_.node(j);
      v[j] = 0.1 * prm_.b() * std::exp(-x * x / (z * z));
    }
    const Profile ref = analytic();
    return {0.0, ref.with_v(v), pot_, ref};
  }

  void c10() {
    const double E = prm_.energy_scale();
    DynamicsOptions o;
    o.dt = 0.1;
    const auto s0 = bump_state();
    const auto run = run_dynamics(s0, 50.0, o);
    double rise = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < run.trace.F_values.size(); ++i)
      rise = std::max(rise, run.trace.F_values[i] - run.trace.F_values[i - 1]);
    add_le("max F(t_{n+1}) - F(t_n) [G b^2/d]", rise / E, 1e-10);
    const auto c = center_profile(run.state.profile);
    const double dist = max_abs_diff(c.centered.u1(), analytic().u1()) / prm_.b();
    add_le("||u1(T) - u*||_inf after centering at T = 50 [b]", dist, 1e-3);
    add("dislocation shift at T = 50 (reported only)", "-", c.shift, 0.0, true, false);

    // Chain rule dF/dt = -Q: one step from checkpoints, defect should scale like dt.
    double worst_order = std::numeric_limits<double>::infinity(), worst_C = 0.0;
    DynamicsState s = s0;
    for (double tc : {0.0, 0.25, 0.5, 1.0, 2.0}) {
      while (s.t < tc - 1e-12) s = step_semi_implicit(s, std::min(0.05, tc - s.t));
      const double F = free_energy(s), Q = dissipation_rate(s);
      std::vector<double> defects;
      for (double dt : {0.01, 0.005, 0.0025}) {
        const double D = std::abs((free_energy(step_semi_implicit(s, dt)) - F) / dt + Q);
        defects.push_back(D);
        worst_C = std::max(worst_C, D / dt);
      }
      for (std::size_t i = 0; i + 1 < defects.size(); ++i)
        worst_order = std::min(worst_order, std::log2(defects[i] / defects[i + 1]));
    }
    add("min observed order of |dF/dt + Q| at 5 checkpoints", ">= 0.9", worst_order, 0.9, worst_order >= 0.9);
    add("max |dF/dt + Q| / dt (reported only)", "-", worst_C, 0.0, true, false);

    // Semi-implicit vs ETD at t = 1. The gap only settles into first order
    // below dt ~ 0.05 (order 0.83 between 0.1 and 0.05), so measure there.
    std::vector<double> gaps;
    for (double dt : {0.1, 0.025, 0.0125, 0.00625}) {
      DynamicsState a = s0, b = s0;
      const int steps = static_cast<int>(std::lround(1.0 / dt));
      for (int i = 0; i < steps; ++i) {
        a = step_semi_implicit(a, dt);
        b = step_etd(b, dt);
      }
      gaps.push_back(max_abs_diff(a.profile.u1(), b.profile.u1()));
    }
    double order = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < gaps.size(); ++i) order = std::min(order, std::log2(gaps[i] / gaps[i + 1]));
    add("semi-implicit / ETD gap at t = 1, dt = 0.1 (reported only) [b]", "-", gaps[0] / prm_.b(), 0.0, true, false);
    add("min observed order of the semi-implicit / ETD gap at t = 1, dt = 0.025 ... 0.00625", ">= 0.9", order, 0.9, order >= 0.9);
  }

  void c11() {
    add_rel("misfit energy of the arctan profile", misfit_energy(analytic(), pot_),
            prm_.energy_scale() * prm_.zeta() / (2 * std::numbers::pi), 5e-3);
  }

  void c12() {
    const auto& p = solved().profile;
    const auto bd = burgers_density(p);
    add_le("|total Burgers content - b| [b]", std::abs(bd.total - prm_.b()) / prm_.b(), 1e-3);
    const auto c = center_profile(p);
    const auto rho = burgers_density(c.centered).rho;
    add_rel("rho(0)", rho[grid_.size() / 2], prm_.b() / (std::numbers::pi * prm_.zeta()), 5e-3);
  }

  AcceptanceOptions opts_;
  PhysParams prm_;
  Grid1D grid_;
  Potential pot_;
  std::optional<SolveResult> solved_;
  AcceptanceReport report_;
  int current_ = 0;
};

}  // namespace

AcceptanceReport run_acceptance(const AcceptanceOptions& opts) { return Suite(opts).run(); }

}  // namespace pn
