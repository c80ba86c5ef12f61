#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "pn/potential.hpp"
#include "pn/profile.hpp"

namespace pn {

struct ResidualField {
  std::vector<double> samples;
  double linf = 0.0;
  double l2 = 0.0;
};

/// R = c0 (-d_xx)^{1/2} u1 + W'(u1), background part in closed form.
ResidualField residual(const Profile& p, const Potential& pot);

struct SolveOptions {
  double dt0 = 0.25;            // pseudo-time step of the gradient-flow stage
  double res_tol = 1e-10;       // L_inf residual tolerance, units of G b / d
  int max_iters = 20000;        // gradient-flow steps
  bool newton = true;
  double newton_switch = 1e-3;  // flow residual (units of G b / d) at which Newton takes over
  double newton_tol = 1e-10;    // units of G b / d
  int max_newton = 40;
  double gmres_tol = 1e-8;
  int gmres_restart = 60;
  int gmres_max_iters = 2000;
};

struct SolveResult {
  Profile profile;
  ResidualField residual;
  int flow_steps = 0;
  int newton_steps = 0;
  int linear_iterations = 0;
  bool monotone = true;
  std::vector<std::string> warnings;
};

class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double linf, double l2, Profile last)
      : std::runtime_error(what), linf_(linf), l2_(l2), last_(std::move(last)) {}
  double residual_linf() const noexcept { return linf_; }
  double residual_l2() const noexcept { return l2_; }
  const Profile& last() const noexcept { return last_; }

 private:
  double linf_, l2_;
  Profile last_;
};

/// Semi-implicit gradient flow followed by Newton with matrix-free GMRES,
/// preconditioned by c0 |xi| + W''(b/4).
SolveResult solve_static(const Profile& init, const Potential& pot, const SolveOptions& opts = {});

/// True when u1 is nonincreasing at every pair of neighbouring nodes.
bool is_monotone_decreasing(const std::vector<double>& u1, double slack = 0.0);

struct Centering {
  double shift;
  Profile centered;
};
/// Locate the zero crossing x* of u1 by linear interpolation and return the
/// profile of u1(x + x*). Throws std::runtime_error for zero or several
/// crossings and for non-monotone input.
Centering center_profile(const Profile& p);

struct DecayCoefficients {
  double c_plus, c_minus;
};
/// Mean of x (u1 + b/4) over [L/4, L/2] and of x (u1 - b/4) over [-L/2, -L/4].
DecayCoefficients decay_coefficients(const Profile& p);

struct BurgersDensity {
  std::vector<double> rho;
  double total;
};
/// rho = -2 d_x u1; total adds the analytic content beyond +-L.
BurgersDensity burgers_density(const Profile& p);

}  // namespace pn
