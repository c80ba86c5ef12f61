#include "pn/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace pn {
namespace {

double max_abs(const std::vector<double>& f) {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

// Samples and half-Laplacian of the base state that F is measured from.
struct Base {
  std::vector<double> u, lu;
};

Base base_of(const DynamicsState& s) {
  if (s.reference) return {s.reference->u1(), s.reference->half_laplacian()};
  const Profile bg = s.profile.with_v(std::vector<double>(s.profile.grid().size(), 0.0));
  return {bg.u1(), bg.half_laplacian()};
}

}  // namespace

void DynamicsTrace::record(const DynamicsState& s, double dt) {
  times.push_back(s.t);
  F_values.push_back(free_energy(s));
  Q_values.push_back(dissipation_rate(s));
  residual_norms.push_back(max_abs(flow_residual(s.profile, s.potential)));
  dt_history.push_back(dt);
}

std::vector<double> flow_residual(const Profile& p, const Potential& pot) {
  const double c0 = p.params().c0();
  auto r = p.half_laplacian();
  const auto u = p.u1();
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = c0 * r[j] + pot.dW(u[j]);
  return r;
}

DynamicsState step_semi_implicit(const DynamicsState& s, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("dt", "time step must be positive");
  const Profile& p = s.profile;
  const auto& grid = p.grid();
  const double c0 = p.params().c0();
  const auto u = p.u1();
  std::vector<double> rhs(grid.size());
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    const double g = s.potential.dW(u[j]) + c0 * p.background_half_laplacian(grid.node(j));
    rhs[j] = p.v()[j] - dt * g;
  }
  DynamicsState next = s;
  next.profile = p.with_v(apply_resolvent(grid, rhs, c0, dt, 1.0));
  next.t = s.t + dt;
  return next;
}

DynamicsState step_etd(const DynamicsState& s, double dt) {
  if (!(dt > 0.0)) throw InvalidInput("dt", "time step must be positive");
  if (!s.reference) throw std::logic_error("step_etd requires a reference static profile");
  const Profile& p = s.profile;
  const Profile& ref = *s.reference;
  const auto& grid = p.grid();
  const double c0 = p.params().c0();
  const auto u = p.u1();
  const auto us = ref.u1();
  const auto rs = flow_residual(ref, s.potential);
  std::vector<double> w(grid.size()), T(grid.size());
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = u[j] - us[j];
    T[j] = w[j] - s.potential.dW(us[j] + w[j]) + s.potential.dW(us[j]) - rs[j];
  }
  RealFft fft(grid.size());
  auto wh = fft.forward(w);
  const auto th = fft.forward(T);
  for (std::size_t m = 0; m < wh.size(); ++m) {
    const double a = c0 * std::abs(grid.fft_wavenumber(m)) + 1.0;
    const double e = std::exp(-a * dt);
    wh[m] = e * wh[m] - std::expm1(-a * dt) / a * th[m];
  }
  const auto wn = fft.inverse(wh);
  std::vector<double> v(grid.size());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = us[j] + wn[j] - p.background(grid.node(j));
  DynamicsState next = s;
  next.profile = p.with_v(std::move(v));
  next.t = s.t + dt;
  return next;
}

double free_energy(const DynamicsState& s) {
  const auto& grid = s.profile.grid();
  const double c0 = s.profile.params().c0();
  const Base base = base_of(s);
  const auto u = s.profile.u1();
  std::vector<double> w(grid.size());
  double mis = 0.0;
  for (std::size_t j = 0; j < w.size(); ++j) {
    w[j] = u[j] - base.u[j];
    mis += s.potential.W(u[j]) - s.potential.W(base.u[j]);
  }
  const auto lw = apply_half_laplacian(grid, w);
  return 0.5 * c0 * inner(grid, w, lw) + c0 * inner(grid, w, base.lu) + grid.spacing() * mis;
}

double dissipation_rate(const DynamicsState& s) {
  const auto r = flow_residual(s.profile, s.potential);
  return inner(s.profile.grid(), r, r);
}

DynamicsState advance(const DynamicsState& s, double dt, Integrator integrator) {
  return integrator == Integrator::etd ? step_etd(s, dt) : step_semi_implicit(s, dt);
}

DynamicsResult run_dynamics(const DynamicsState& s0, double T_end, const DynamicsOptions& opts) {
  if (!(T_end > 0.0)) throw InvalidInput("T_end", "final time must be positive");
  if (!(opts.dt > 0.0)) throw InvalidInput("dt", "time step must be positive");
  const double tol = opts.energy_tol * s0.profile.params().energy_scale();
  DynamicsResult res{s0, {}, {}};
  res.trace.record(s0, 0.0);
  double F = res.trace.F_values.back();

  std::vector<double> marks = opts.snapshot_times;
  std::sort(marks.begin(), marks.end());
  std::size_t next_mark = 0;
  while (next_mark < marks.size() && marks[next_mark] <= s0.t) {
    res.snapshots.push_back(s0);
    ++next_mark;
  }

  double dt = opts.dt;
  const double eps = 1e-12 * std::max(1.0, T_end);
  while (res.state.t < T_end - eps) {
    double target = T_end;
    if (next_mark < marks.size()) target = std::min(target, marks[next_mark]);
    int halvings = 0;
    double step = std::min(dt, target - res.state.t);
    for (;;) {
      DynamicsState trial = advance(res.state, step, opts.integrator);
      const double Fn = free_energy(trial);
      if (!opts.adapt || Fn <= F + tol) {
        res.state = std::move(trial);
        F = Fn;
        break;
      }
      if (++halvings > opts.max_halvings)
        throw DynamicsError("time step underflow after " + std::to_string(opts.max_halvings) +
                                " halvings at t = " + std::to_string(res.state.t),
                            res.trace, res.state);
      step *= 0.5;
      dt = step;
    }
    if (std::abs(res.state.t - target) <= eps) res.state.t = target;
    res.trace.record(res.state, step);
    if (halvings == 0) dt = std::min(2.0 * dt, opts.dt);
    while (next_mark < marks.size() && marks[next_mark] <= res.state.t + eps) {
      res.snapshots.push_back(res.state);
      ++next_mark;
    }
  }
  return res;
}

}  // namespace pn
