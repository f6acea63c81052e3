#pragma once

#include <vector>

#include "torsion/geometry.hpp"
#include "torsion/trig_polynomial.hpp"

namespace torsion {

/// Radial derivative at r = 1 of the harmonic extension of zeta into the
/// unit disk: mode k carries multiplier k (mode 0 extends to a constant).
TrigPolynomial harmonic_normal_derivative(const TrigPolynomial& zeta);

/// Fail-point functional F = zeta - d_nu(T zeta): multiplier (1 - k) on every
/// mode, so mode 0 passes through and mode 1 (translations) is annihilated.
/// Its argmax predicts the location of maximal |grad u| to first order.
TrigPolynomial fail_point_functional(const TrigPolynomial& zeta);

/// Value of the harmonic extension T zeta at polar point (r, theta), r <= 1:
/// mode k scales by r^k.
double harmonic_extension(const TrigPolynomial& zeta, double r, double theta);

/// First-order model of |grad u|^2 on the moving boundary:
///   E1(theta, t) = 1/n^2 + (2/n^2) * F(theta) * t.
double boundary_gradient_expansion(const TrigPolynomial& zeta, double t,
                                   double theta, int dim = 2);
/// Same model with a precomputed functional F (avoids rebuilding F in loops).
double expansion_from_functional(const TrigPolynomial& functional, double t,
                                 double theta, int dim = 2);

/// Smooth quintic step: 0 on [0, 1/4], 1 on [3/4, 1], C^2 monotone between.
double radial_cutoff(double r);

/// Interior shape derivative of the transported torsion function under the
/// radial map F_t(r, theta) = (r + t*chi(r)*zeta(theta), theta):
///   v = (1/n) (T zeta - r chi(r) zeta(theta)),  n = 2.
/// v vanishes on the unit circle. Only the planar field is evaluable.
class ShapeDerivativeField {
public:
  explicit ShapeDerivativeField(TrigPolynomial zeta, int dim = 2);

  double operator()(double r, double theta) const;

  int dim() const noexcept { return dim_; }
  const TrigPolynomial& zeta() const noexcept { return zeta_; }

private:
  TrigPolynomial zeta_;
  int dim_;
};

double shape_derivative(const TrigPolynomial& zeta, double r, double theta);

enum class CriticalType { maximum, minimum, inflection };
enum class Nondegeneracy {
  nondegenerate,   ///< interior (or critical-endpoint) max with F'' < 0
  degenerate,      ///< critical max with vanishing second derivative
  not_applicable,  ///< non-critical arc-endpoint maximum
};

struct CriticalPoint {
  double angle = 0.0;
  double value = 0.0;
  CriticalType type = CriticalType::maximum;
  bool endpoint = false;
};

struct FailPointPrediction {
  bool degenerate = false;  ///< profile constant on the arc, no argmax
  double predicted_angle = 0.0;
  double predicted_value = 0.0;
  Nondegeneracy nondegeneracy = Nondegeneracy::not_applicable;
  std::vector<CriticalPoint> critical_points;  ///< all critical points on the arc
};

/// Global maximum of a trig polynomial over a closed arc: dense grid scan,
/// Newton refinement on the derivative (bisection fallback), endpoint
/// handling, and a full critical-point inventory.
FailPointPrediction trig_profile_argmax(const TrigPolynomial& profile, Arc arc);

/// Predicted fail point: argmax of F = zeta - d_nu(T zeta) over the arc.
FailPointPrediction predict_fail_point(const TrigPolynomial& zeta, Arc arc = {});

/// Predicted curvature minimum: argmax of zeta + zeta'' over the arc.
FailPointPrediction predict_curvature_min(const TrigPolynomial& zeta, Arc arc = {});

}  // namespace torsion
