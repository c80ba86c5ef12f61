#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pn/potential.hpp"
#include "pn/profile.hpp"

namespace pn {

class MisfitDivergence : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class PerturbationKind { elastic_extension, user_field };

/// Trace phi1 of a perturbation on the upper side of the slip plane; the
/// lower side follows from phi1^- = -phi1^+, phi2^- = phi2^+.
struct Perturbation {
  Grid1D grid;
  std::vector<double> phi1;
  PerturbationKind kind = PerturbationKind::elastic_extension;
  std::string label;

  /// sum_i a_i exp(-(x - c_i)^2 / w_i^2)
  struct Bump {
    double amplitude, center, width;
  };
  static Perturbation bumps(const Grid1D& grid, const std::vector<Bump>& parts, std::string label = "bumps");
  /// max |phi1| over |x| >= L/2.
  double outer_max() const;
  Perturbation scaled(double factor) const;
};

/// Tensor-product quadrature in the upper half-plane: trapezoid over the
/// grid nodes in x and over y in {0} U {y_min r^i} up to y_max.
struct QuadratureSpec {
  double y_min_over_zeta = 1.0 / 50.0;
  double ratio = 1.03;
  double y_max_over_L = 8.0;
};

std::vector<double> quadrature_levels(double y_min, double ratio, double y_max);
/// Trapezoid weights for a sorted abscissa list.
std::vector<double> trapezoid_weights(const std::vector<double>& y);

/// int W(u1) dx, trapezoid plus analytic tails (1/2) W''(well) c^2 / L.
/// Throws MisfitDivergence when u1 does not settle into wells at the ends.
double misfit_energy(const Profile& p, const Potential& pot);

struct ReducedParts {
  double quadratic;    // (G/(1-nu)) int |(-d_xx)^{1/4} phi1|^2
  double cross_gamma;  // (2G/(1-nu)) int phi1 (-d_xx)^{1/2} u1
  double misfit_diff;  // int [W(u1 + phi1) - W(u1)]
  double total() const { return quadratic + cross_gamma + misfit_diff; }
};
ReducedParts reduced_parts(const Perturbation& phi, const Profile& p, const Potential& pot);
double reduced_perturbed_energy(const Perturbation& phi, const Profile& p, const Potential& pot);

struct ElasticParts {
  double E_els;      // elastic energy of the extension of phi1
  double cross_els;  // int eps(phi) : sigma(u) over the plane minus the slip line
  bool box_warning;  // extension field not negligible on the top level
};
ElasticParts elastic_parts(const Perturbation& phi, const Profile& p, const QuadratureSpec& q = {});

double perturbed_total_energy(const Perturbation& phi, const Profile& p, const Potential& pot,
                              const QuadratureSpec& q = {});

struct CrossTerms {
  double cross_els, cross_gamma;
};
CrossTerms cross_terms(const Perturbation& phi, const Profile& p, const QuadratureSpec& q = {});

/// (1/2) int sigma : eps over the box |x| <= R, 0 < |y| <= R.
double elastic_energy_box(const Profile& p, double R, const QuadratureSpec& q = {});

struct EnergyBreakdown {
  double E_mis = 0;
  double E_gamma_e_pert = 0;  // quadratic part of the reduced perturbed energy
  double E_hat_gamma = 0;
  double E_hat_total = 0;
  double cross_gamma = 0;
  double cross_els = 0;
  double E_els_pert = 0;
  double misfit_diff = 0;
  double E_els_box = 0;
  double box_radius = 0;
  bool box_warning = false;
};
EnergyBreakdown energy_breakdown(const Perturbation& phi, const Profile& p, const Potential& pot, double box_radius,
                                 const QuadratureSpec& q = {});

/// Reproducible random bump perturbations. Out-of-range members have
/// amplitudes large enough to push u1 + phi1 outside [-b/4, b/4].
std::vector<Perturbation> seeded_perturbations(const Grid1D& grid, const PhysParams& params, std::uint64_t seed,
                                               int count, int out_of_range);

}  // namespace pn
