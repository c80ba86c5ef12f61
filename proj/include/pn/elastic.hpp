#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pn/fft.hpp"
#include "pn/profile.hpp"

namespace pn {

/// Positive y samples, strictly increasing. With `mirrored`, fields are also
/// reported at -y.
struct YLevels {
  std::vector<double> values;
  bool mirrored = true;

  YLevels(std::vector<double> values, bool mirrored = true);
  static YLevels geometric(double y_min, double y_max, std::size_t count, bool mirrored = true);
};

/// Row-major array indexed by (level, node).
struct Field2D {
  std::size_t rows = 0, cols = 0;
  std::vector<double> data;

  Field2D() = default;
  Field2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

/// Displacements above (y = +values[i]) and below (y = -values[i]) the slip plane.
struct HalfPlaneField {
  Grid1D grid;
  YLevels ylevels;
  Field2D u1_plus, u2_plus, u1_minus, u2_minus;
};

struct StressSide {
  Field2D s11, s12, s22, s33;
};

struct StressField {
  Grid1D grid;
  YLevels ylevels;
  PhysParams params;
  StressSide plus, minus;

  struct Strain {
    Field2D e11, e12, e22;
  };
  /// Plane-strain strains recovered from the stresses.
  Strain strain(bool upper) const;
};

/// All fields at one point.
struct PointFields {
  double u1 = 0, u2 = 0;
  double e11 = 0, e12 = 0, e22 = 0;
  double s11 = 0, s12 = 0, s22 = 0, s33 = 0;
};

/// Closed-form displacement and stress of the arctan dislocation of width
/// `zeta` (default: the material zeta). y > 0 uses +zeta, y < 0 uses -zeta;
/// at y = 0 `side` selects the one-sided limit.
PointFields analytic_fields(const PhysParams& params, double x, double y, int side = +1);
PointFields analytic_fields(const PhysParams& params, double zeta, double x, double y, int side = +1);

/// Fields of a profile on one level y >= 0 of the upper half-plane. The
/// correction v is extended per Fourier mode; the background uses the
/// closed forms. Mirror symmetry gives the lower half-plane.
struct LevelFields {
  std::vector<double> u1, u2, e11, e12, e22, s11, s12, s22, s33;
};

class Extension {
 public:
  explicit Extension(const Profile& p);
  LevelFields level(double y, bool displacements = true) const;
  const Profile& profile() const noexcept { return p_; }

 private:
  Profile p_;
  std::vector<cplx> spectrum_;
};

HalfPlaneField extend_to_half_planes(const Profile& p, const YLevels& yl);
StressField stress_field(const Profile& p, const YLevels& yl);

struct Traction {
  std::vector<double> sigma12, sigma22;
};
/// sigma12 = -(G/(1-nu)) (-d_xx)^{1/2} u1 and sigma22 = 0 on the slip plane.
Traction dtn_traction(const Profile& p);

struct LambdaSeminorm {
  double value;      // squared seminorm summed over components and both half-planes
  double trace_sq;   // squared H^{s-1/2} seminorm of u1
  double ratio;      // sqrt(value / trace_sq)
};
/// || (-d_xx)^{(s-m)/2} d_y^m u ||^2 over the plane minus the slip line, with
/// the y-integral done in closed form per mode. Requires s >= 1 and
/// 0 <= m <= floor(s); a background needs s > 1.
LambdaSeminorm lambda_seminorm(const Profile& p, double s, int m);

/// y-profile of a same-trace competitor field for one Fourier mode:
/// u1 = A f(t), u2 = i sgn(xi) A g(t), t = |xi| y, with f(0) = 1.
struct ModeProfile {
  std::string name;
  std::function<double(double)> f, df, g, dg;
};

/// The elastic extension: f = (1 - k t) e^{-t}, g = -k ((1 - 2nu) + t) e^{-t}, k = 1/(2 - 2nu).
ModeProfile extension_mode_profile(const PhysParams& params);
/// I[f, g] = int_0^inf [G (f^2 + g'^2 + (f' - g)^2 / 2) + (lambda/2)(f + g')^2] dt,
/// the elastic energy per |xi| |A|^2 of one mode in one half-plane.
double mode_energy_functional(const PhysParams& params, const ModeProfile& mp);
/// Elastic energy of the field built from the trace samples with the mode
/// profile, both half-planes.
double trace_field_energy(const Grid1D& grid, const PhysParams& params, std::span<const double> trace,
                          const ModeProfile& mp);

/// Max over |x| <= L/4 of the centred finite-difference divergence of the
/// stress on level y (spacing dy in y, grid spacing in x).
double equilibrium_residual(const Profile& p, double y, double dy);

}  // namespace pn
