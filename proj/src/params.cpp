#include "pn/params.hpp"

#include <cmath>

namespace pn {

PhysParams::PhysParams(double G, double nu, double b, double d) : G_(G), nu_(nu), b_(b), d_(d) {
  if (!(G > 0.0) || !std::isfinite(G)) throw InvalidInput("G", "shear modulus must be positive");
  if (!(nu > 0.0 && nu < 0.5)) throw InvalidInput("nu", "Poisson ratio must lie in (0, 0.5)");
  if (!(b > 0.0) || !std::isfinite(b)) throw InvalidInput("b", "Burgers vector must be positive");
  if (!(d > 0.0) || !std::isfinite(d)) throw InvalidInput("d", "interplanar distance must be positive");
  zeta_ = d / (2.0 * (1.0 - nu));
  c0_ = 2.0 * G / (1.0 - nu);
}

}  // namespace pn
