#pragma once

#include <stdexcept>
#include <string>

namespace pn {

// Thrown for out-of-range physical or numerical inputs. Carries the name of
// the offending quantity so config errors can point at the key.
class InvalidInput : public std::invalid_argument {
 public:
  InvalidInput(std::string key, const std::string& what)
      : std::invalid_argument(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Isotropic material constants for a straight edge dislocation.
///
/// The core half-width zeta = d / (2 (1 - nu)) and the nonlocal operator
/// coefficient c0 = 2 G / (1 - nu) are derived once at construction.
class PhysParams {
 public:
  PhysParams(double G, double nu, double b, double d);

  /// G = b = d = 1, nu = 0.25 (zeta = 2/3).
  static PhysParams desk() { return {1.0, 0.25, 1.0, 1.0}; }
  /// G / (1 - nu) = 1, so c0 = 2 and the reduced energy carries no prefactor.
  static PhysParams normalized(double nu = 0.25, double b = 1.0, double d = 1.0) {
    return {1.0 - nu, nu, b, d};
  }

  double G() const noexcept { return G_; }
  double nu() const noexcept { return nu_; }
  double b() const noexcept { return b_; }
  double d() const noexcept { return d_; }
  double zeta() const noexcept { return zeta_; }
  double c0() const noexcept { return c0_; }

  /// Lame's first parameter 2 nu G / (1 - 2 nu).
  double lame_lambda() const noexcept { return 2.0 * nu_ * G_ / (1.0 - 2.0 * nu_); }
  /// 1 / (2 - 2 nu), the factor multiplying |xi| y in the extension.
  double kappa() const noexcept { return 1.0 / (2.0 - 2.0 * nu_); }

  // Natural scales used for tolerances.
  double stress_scale() const noexcept { return G_ * b_ / d_; }
  double energy_scale() const noexcept { return G_ * b_ * b_ / d_; }

  bool operator==(const PhysParams&) const = default;

 private:
  double G_, nu_, b_, d_;
  double zeta_, c0_;
};

}  // namespace pn
