#include "pn/static_solver.hpp"

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <algorithm>
#include <optional>
#include <cmath>
#include <unsupported/Eigen/IterativeSolvers>

#include "pn/dynamics.hpp"

namespace pn {
namespace {

// J d = c0 (-d_xx)^{1/2} d + W''(u) d, applied matrix-free.
class Jacobian;

}  // namespace
}  // namespace pn

namespace Eigen::internal {
template <>
struct traits<pn::Jacobian> : public traits<Eigen::SparseMatrix<double>> {};
}  // namespace Eigen::internal

namespace pn {
namespace {

class Jacobian : public Eigen::EigenBase<Jacobian> {
 public:
  using Scalar = double;
  using RealScalar = double;
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic, IsRowMajor = false };

  Jacobian(const Grid1D& grid, double c0, std::vector<double> curvature)
      : grid_(grid), c0_(c0), curvature_(std::move(curvature)) {}

  Eigen::Index rows() const { return static_cast<Eigen::Index>(grid_.size()); }
  Eigen::Index cols() const { return rows(); }

  template <typename Rhs>
  Eigen::Product<Jacobian, Rhs, Eigen::AliasFreeProduct> operator*(const Eigen::MatrixBase<Rhs>& x) const {
    return Eigen::Product<Jacobian, Rhs, Eigen::AliasFreeProduct>(*this, x.derived());
  }

  void apply(const double* x, double* y) const {
    std::span<const double> in(x, grid_.size());
    const auto lx = apply_half_laplacian(grid_, in);
    for (std::size_t j = 0; j < grid_.size(); ++j) y[j] = c0_ * lx[j] + curvature_[j] * x[j];
  }

 private:
  Grid1D grid_;
  double c0_;
  std::vector<double> curvature_;
};

// Inverse of the constant-coefficient part c0 |xi| + W''(well).
class SpectralPreconditioner {
 public:
  using StorageIndex = int;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

  SpectralPreconditioner() = default;
  void setup(const Grid1D& grid, double c0, double shift) {
    grid_ = grid;
    c0_ = c0;
    shift_ = shift;
  }
  template <typename M>
  SpectralPreconditioner& analyzePattern(const M&) { return *this; }
  template <typename M>
  SpectralPreconditioner& factorize(const M&) { return *this; }
  template <typename M>
  SpectralPreconditioner& compute(const M&) { return *this; }

  template <typename Rhs>
  Eigen::VectorXd solve(const Eigen::MatrixBase<Rhs>& b) const {
    Eigen::VectorXd bb = b;
    const auto out = apply_resolvent(*grid_, std::span<const double>(bb.data(), bb.size()), c0_, 1.0, shift_);
    return Eigen::Map<const Eigen::VectorXd>(out.data(), static_cast<Eigen::Index>(out.size()));
  }
  Eigen::ComputationInfo info() const { return Eigen::Success; }

 private:
  std::optional<Grid1D> grid_;
  double c0_ = 1.0, shift_ = 1.0;
};

}  // namespace
}  // namespace pn

namespace Eigen::internal {
template <typename Rhs>
struct generic_product_impl<pn::Jacobian, Rhs, SparseShape, DenseShape, GemvProduct>
    : generic_product_impl_base<pn::Jacobian, Rhs, generic_product_impl<pn::Jacobian, Rhs>> {
  using Scalar = typename Product<pn::Jacobian, Rhs>::Scalar;
  template <typename Dest>
  static void scaleAndAddTo(Dest& dst, const pn::Jacobian& lhs, const Rhs& rhs, const Scalar& alpha) {
    Eigen::VectorXd x = rhs;
    Eigen::VectorXd y(x.size());
    lhs.apply(x.data(), y.data());
    dst += alpha * y;
  }
};
}  // namespace Eigen::internal

namespace pn {

ResidualField residual(const Profile& p, const Potential& pot) {
  ResidualField r;
  r.samples = flow_residual(p, pot);
  for (double x : r.samples) r.linf = std::max(r.linf, std::abs(x));
  r.l2 = std::sqrt(inner(p.grid(), r.samples, r.samples));
  return r;
}

bool is_monotone_decreasing(const std::vector<double>& u1, double slack) {
  for (std::size_t j = 0; j + 1 < u1.size(); ++j)
    if (u1[j + 1] - u1[j] > slack) return false;
  return true;
}

SolveResult solve_static(const Profile& init, const Potential& pot, const SolveOptions& opts) {
  if (!(opts.dt0 > 0.0)) throw InvalidInput("dt0", "pseudo-time step must be positive");
  if (!(opts.res_tol > 0.0) || !(opts.newton_tol > 0.0)) throw InvalidInput("res_tol", "tolerances must be positive");
  const auto& params = init.params();
  const auto& grid = init.grid();
  const double scale = params.stress_scale();
  const double tol = opts.res_tol * scale;

  SolveResult out{init, residual(init, pot), 0, 0, 0, true, {}};
  if (auto tails = init.check_tails(); !tails.ok) out.warnings.push_back("initial tails: " + tails.message);
  const double slack = 1e-12 * params.b();
  bool enforce_monotone = is_monotone_decreasing(init.u1(), slack);

  // Gradient-flow stage.
  const double switch_tol = opts.newton ? std::max(tol, opts.newton_switch * scale) : tol;
  DynamicsState state{0.0, init, pot, std::nullopt};
  double dt = opts.dt0;
  while (out.residual.linf > switch_tol) {
    if (out.flow_steps >= opts.max_iters)
      throw SolveError("gradient flow did not reach the residual tolerance in " + std::to_string(opts.max_iters) +
                           " steps",
                       out.residual.linf, out.residual.l2, state.profile);
    DynamicsState next = step_semi_implicit(state, dt);
    if (enforce_monotone && !is_monotone_decreasing(next.profile.u1(), slack)) {
      dt *= 0.5;
      if (dt < 0x1p-20 * opts.dt0) {
        // Not a step-size effect (typically the periodic wrap of a slowly
        // decaying forcing): give up on enforcement and flag it.
        enforce_monotone = false;
        dt = opts.dt0;
        out.warnings.push_back("gradient flow could not preserve monotonicity; enforcement dropped");
      }
      continue;
    }
    state = std::move(next);
    dt = std::min(opts.dt0, 2.0 * dt);
    out.residual = residual(state.profile, pot);
    ++out.flow_steps;
  }
  out.profile = state.profile;

  // Newton stage.
  if (opts.newton) {
    const double ntol = std::min(tol, opts.newton_tol * scale);
    const double well = pot.d2W(params.b() / 4.0);
    const double c0 = params.c0();
    while (out.residual.linf > ntol) {
      if (out.newton_steps >= opts.max_newton)
        throw SolveError("Newton did not converge in " + std::to_string(opts.max_newton) + " steps",
                         out.residual.linf, out.residual.l2, out.profile);
      const auto u = out.profile.u1();
      Jacobian J(grid, c0, pot.eval(u, 2));
      Eigen::GMRES<Jacobian, SpectralPreconditioner> gmres;
      gmres.preconditioner().setup(grid, c0, well > 0.0 ? well : 1.0);
      gmres.set_restart(opts.gmres_restart);
      gmres.setTolerance(opts.gmres_tol);
      gmres.setMaxIterations(opts.gmres_max_iters);
      gmres.compute(J);
      Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(out.residual.samples.data(),
                                                               static_cast<Eigen::Index>(grid.size()));
      Eigen::VectorXd delta = gmres.solve(rhs);
      out.linear_iterations += static_cast<int>(gmres.iterations());

      // Backtrack on the L2 residual.
      double lambda = 1.0;
      bool accepted = false;
      for (int k = 0; k < 12; ++k, lambda *= 0.5) {
        std::vector<double> v = out.profile.v();
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += lambda * delta[static_cast<Eigen::Index>(j)];
        Profile trial = out.profile.with_v(std::move(v));
        ResidualField r = residual(trial, pot);
        if (r.l2 < out.residual.l2) {
          out.profile = std::move(trial);
          out.residual = std::move(r);
          accepted = true;
          break;
        }
      }
      ++out.newton_steps;
      if (!accepted)
        throw SolveError("Newton step failed to reduce the residual", out.residual.linf, out.residual.l2,
                         out.profile);
    }
  }
  if (out.residual.linf > tol)
    throw SolveError("residual above tolerance after solve", out.residual.linf, out.residual.l2, out.profile);

  out.monotone = is_monotone_decreasing(out.profile.u1(), slack);
  if (!out.monotone) out.warnings.push_back("solution is not monotone decreasing");
  if (auto tails = out.profile.check_tails(); !tails.ok) out.warnings.push_back("solution tails: " + tails.message);
  return out;
}

Centering center_profile(const Profile& p) {
  const auto u = p.u1();
  const auto& grid = p.grid();
  if (!is_monotone_decreasing(u, 1e-12 * p.params().b()))
    throw std::runtime_error("center_profile: u1 is not monotone decreasing");
  std::vector<double> roots;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) {
    const double a = u[j], b = u[j + 1];
    if (a == 0.0 && (j == 0 || u[j - 1] != 0.0)) roots.push_back(grid.node(j));
    else if ((a > 0.0 && b < 0.0) || (a < 0.0 && b > 0.0))
      roots.push_back(grid.node(j) + grid.spacing() * a / (a - b));
  }
  if (u.back() == 0.0 && u[u.size() - 2] != 0.0) roots.push_back(grid.node(u.size() - 1));
  if (roots.empty()) throw std::runtime_error("center_profile: u1 has no zero crossing");
  if (roots.size() > 1) throw std::runtime_error("center_profile: u1 crosses zero more than once");
  const double shift = roots.front();
  return {shift, p.translate(-shift)};
}

DecayCoefficients decay_coefficients(const Profile& p) {
  const auto& grid = p.grid();
  const double L = grid.half_length();
  const double b = p.params().b();
  const auto u = p.u1();
  double sp = 0.0, sm = 0.0;
  int np = 0, nm = 0;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double x = grid.node(j);
    if (x >= L / 4.0 && x <= L / 2.0) {
      sp += x * (u[j] + b / 4.0);
      ++np;
    } else if (x <= -L / 4.0 && x >= -L / 2.0) {
      sm += x * (u[j] - b / 4.0);
      ++nm;
    }
  }
  if (np < 2 || nm < 2) throw std::runtime_error("decay_coefficients: fit window holds fewer than two nodes");
  return {sp / np, sm / nm};
}

BurgersDensity burgers_density(const Profile& p) {
  const auto& grid = p.grid();
  const double b = p.params().b();
  BurgersDensity out;
  out.rho = p.derivative();
  double sum = 0.0;
  for (auto& r : out.rho) {
    r *= -2.0;
    sum += r;
  }
  const double right = p.u1_right_end();
  const double left = p.u1().front();
  out.total = grid.spacing() * sum + 2.0 * (b / 4.0 + right) + 2.0 * (b / 4.0 - left);
  return out;
}

}  // namespace pn
