#pragma once

#include <array>
#include <numbers>
#include <vector>

#include "torsion/trig_polynomial.hpp"

namespace torsion {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Maps any real angle into [0, 2*pi).
double wrap_angle(double theta);

/// Closed angular interval [lo, hi]. The default covers the full circle,
/// in which case searches treat the profile as periodic.
struct Arc {
  double lo = 0.0;
  double hi = two_pi;

  double length() const { return hi - lo; }
  bool full_circle() const { return length() >= two_pi - 1e-12; }
  bool contains(double theta) const { return theta >= lo - 1e-12 && theta <= hi + 1e-12; }
};

/// Nearly-disk domain r < 1 + t*zeta(theta).
///
/// Construction verifies positivity of the boundary radius on a dense grid;
/// a non-star-shaped profile is a construction error. Instances are
/// immutable and safe to share across threads.
class StarDomain {
public:
  StarDomain(TrigPolynomial zeta, double t);

  double radius(double theta) const { return 1.0 + t_ * zeta_(theta); }
  std::array<double, 2> boundary_point(double theta) const;

  const TrigPolynomial& zeta() const noexcept { return zeta_; }
  double t() const noexcept { return t_; }

  /// Symmetric about both coordinate axes (even cosine modes only).
  bool axially_symmetric() const { return zeta_.even_cosine_modes_only(); }
  /// Symmetric under x -> -x (even modes only).
  bool centrally_symmetric() const { return zeta_.even_modes_only(); }
  /// Radius independent of theta (circle).
  bool is_circle() const { return t_ == 0.0 || zeta_.is_constant(); }

private:
  TrigPolynomial zeta_;
  double t_;
};

/// Axis-aligned rectangle (-L, L) x (-l, l) with L >= l > 0.
class RectangleDomain {
public:
  RectangleDomain(double half_length, double half_width);

  double half_length() const noexcept { return half_length_; }  // L
  double half_width() const noexcept { return half_width_; }    // l

private:
  double half_length_;
  double half_width_;
};

/// Exact (non-linearized) signed curvature of the boundary r = 1 + t*zeta:
///   kappa = ((1+tz)^2 + 2(tz')^2 - (1+tz)(tz'')) / ((1+tz)^2 + (tz')^2)^{3/2}.
double curvature(const StarDomain& domain, double theta);

/// First-order curvature deficit: kappa = 1 - (zeta + zeta'') t + O(t^2).
/// Pure mode c_k cos(k theta) maps to (1 - k^2) c_k cos(k theta).
TrigPolynomial curvature_linear_term(const TrigPolynomial& zeta);

/// Contact points of the largest inscribed circle (centered at the origin by
/// central symmetry): the set argmin r(theta).
struct ContactPoints {
  bool whole_boundary = false;     ///< circle: every boundary point touches
  double min_radius = 0.0;
  std::vector<double> angles;      ///< normalized to [0, 2pi), increasing
};

/// Requires a centrally symmetric domain (even modes only); throws
/// std::invalid_argument otherwise, since the inscribed circle of an
/// asymmetric domain need not be centered at the origin.
ContactPoints contact_points(const StarDomain& domain);

struct ConvexityReport {
  bool convex = false;
  double min_curvature = 0.0;
  double min_angle = 0.0;   ///< smallest angle attaining the minimum
};

/// Positivity of the exact curvature on a theta grid; grid_size >= 256.
ConvexityReport is_convex(const StarDomain& domain, int grid_size = 1024);

}  // namespace torsion
