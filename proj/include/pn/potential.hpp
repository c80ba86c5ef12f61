#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pn/params.hpp"

namespace pn {

enum class PotentialKind { frenkel, table, custom };

/// Misfit potential W(u1) on the slip plane, b/2-periodic in u1.
///
/// frenkel: W = (G b^2 / 4 pi^2 d)(1 + cos(4 pi u / b)).
/// table:   periodic cubic spline through uniformly spaced (u, W) samples
///          covering one period, shifted so that min W = 0.
/// custom:  user callable returning W, W' or W'' for order 0, 1, 2.
class Potential {
 public:
  using Callable = std::function<double(double u, int order)>;

  static Potential frenkel(const PhysParams& params);
  static Potential from_table(const PhysParams& params, std::vector<double> u, std::vector<double> w);
  /// CSV with header `u,W` (comment lines starting with '#' are skipped).
  static Potential load_table(const PhysParams& params, const std::filesystem::path& path);
  static Potential custom(const PhysParams& params, Callable f, std::string name = "custom");

  PotentialKind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }
  const PhysParams& params() const noexcept { return params_; }
  double period() const noexcept { return params_.b() / 2.0; }

  /// W, W' or W'' at u. Throws std::invalid_argument for other orders.
  double eval(double u, int order = 0) const;
  double W(double u) const { return eval(u, 0); }
  double dW(double u) const { return eval(u, 1); }
  double d2W(double u) const { return eval(u, 2); }

  std::vector<double> eval(const std::vector<double>& u, int order) const;

 private:
  struct Spline;
  Potential(PotentialKind kind, PhysParams params, std::string name)
      : kind_(kind), params_(params), name_(std::move(name)) {}

  PotentialKind kind_;
  PhysParams params_;
  std::string name_;
  std::shared_ptr<const Spline> spline_;
  Callable custom_;
};

struct PotentialReport {
  bool interior_above_wells = false;   // W(v) > W(+-b/4) for v in (-b/4, b/4)
  bool positive_curvature = false;     // W''(+-b/4) > 0
  bool wells_equal = false;            // |W(b/4) - W(-b/4)| <= 1e-12
  double min_interior_gap = 0.0;       // min over interior samples of W(v) - max W(+-b/4)
  double curvature_minus = 0.0, curvature_plus = 0.0;
  double well_difference = 0.0;
  bool pass() const { return interior_above_wells && positive_curvature && wells_equal; }
};

/// Dense check (10^4 interior samples) of the structural assumptions on W.
PotentialReport validate_potential(const Potential& pot);

}  // namespace pn
