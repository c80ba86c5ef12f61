#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "pn/potential.hpp"
#include "pn/profile.hpp"

namespace pn {

/// State of the slip-plane gradient flow
///   d_t u1 = -c0 (-d_xx)^{1/2} u1 - W'(u1).
/// The background of `profile` is fixed; only v evolves.
struct DynamicsState {
  double t = 0.0;
  Profile profile;
  Potential potential;
  std::optional<Profile> reference;  // static solution u*, needed by ETD
};

struct DynamicsTrace {
  std::vector<double> times, F_values, Q_values, residual_norms, dt_history;
  void record(const DynamicsState& s, double dt);
};

/// R = c0 (-d_xx)^{1/2} u1 + W'(u1) on the grid nodes.
std::vector<double> flow_residual(const Profile& p, const Potential& pot);

/// v^{n+1} = (v^n - dt g^n) / (1 + dt c0 |xi|), g = W'(u1) + c0 (-d_xx)^{1/2} u_bg.
DynamicsState step_semi_implicit(const DynamicsState& s, double dt);

/// ETD1 for w = u1 - u*: w^{n+1} = e^{-a dt} w^n + (1 - e^{-a dt})/a T(w^n),
/// a = c0 |xi| + 1, T(w) = w - W'(u* + w) + W'(u*) - R(u*).
DynamicsState step_etd(const DynamicsState& s, double dt);

/// Free energy relative to the reference (or to the background when none):
///   F = (c0/2) <w, L w> + c0 <w, L u_base> + int [W(u_base + w) - W(u_base)],
/// L = (-d_xx)^{1/2}. With a solved reference this equals
/// (c0/2) <w, L w> - <w, W'(u*)> + int [W(u* + w) - W(u*)].
double free_energy(const DynamicsState& s);

/// Q = int R^2 dx.
double dissipation_rate(const DynamicsState& s);

enum class Integrator { semi_implicit, etd };

struct DynamicsOptions {
  double dt = 0.1;
  bool adapt = true;
  int max_halvings = 20;
  Integrator integrator = Integrator::semi_implicit;
  /// Allowed per-step increase of F, in units of G b^2 / d.
  double energy_tol = 1e-10;
  std::vector<double> snapshot_times;
};

struct DynamicsResult {
  DynamicsState state;
  DynamicsTrace trace;
  std::vector<DynamicsState> snapshots;
};

class DynamicsError : public std::runtime_error {
 public:
  DynamicsError(const std::string& what, DynamicsTrace trace, DynamicsState last)
      : std::runtime_error(what), trace_(std::move(trace)), last_(std::move(last)) {}
  const DynamicsTrace& trace() const noexcept { return trace_; }
  const DynamicsState& last_state() const noexcept { return last_; }

 private:
  DynamicsTrace trace_;
  DynamicsState last_;
};

DynamicsState advance(const DynamicsState& s, double dt, Integrator integrator);

/// Integrate to T_end. With adapt, a step that raises F by more than
/// energy_tol G b^2/d is retried at half the step; after max_halvings
/// consecutive failures DynamicsError is thrown with the trace so far.
DynamicsResult run_dynamics(const DynamicsState& s0, double T_end, const DynamicsOptions& opts);

}  // namespace pn
