#include "torsion/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torsion/detail/search.hpp"

namespace torsion {

TrigPolynomial harmonic_normal_derivative(const TrigPolynomial& zeta) {
  return zeta.mode_multiplied([](int k) { return static_cast<double>(k); });
}

TrigPolynomial fail_point_functional(const TrigPolynomial& zeta) {
  return zeta.mode_multiplied([](int k) { return 1.0 - static_cast<double>(k); });
}

double harmonic_extension(const TrigPolynomial& zeta, double r, double theta) {
  double value = 0.0;
  for (const auto& [k, c] : zeta.cos_coeffs()) value += c * std::pow(r, k) * std::cos(k * theta);
  for (const auto& [k, s] : zeta.sin_coeffs()) value += s * std::pow(r, k) * std::sin(k * theta);
  return value;
}

double expansion_from_functional(const TrigPolynomial& functional, double t,
                                 double theta, int dim) {
  if (dim < 2) throw std::invalid_argument("dimension must be >= 2");
  const double n2 = static_cast<double>(dim) * dim;
  return 1.0 / n2 + (2.0 / n2) * functional(theta) * t;
}

double boundary_gradient_expansion(const TrigPolynomial& zeta, double t,
                                   double theta, int dim) {
  return expansion_from_functional(fail_point_functional(zeta), t, theta, dim);
}

double radial_cutoff(double r) {
  if (r <= 0.25) return 0.0;
  if (r >= 0.75) return 1.0;
  const double s = (r - 0.25) / 0.5;
  return ((6.0 * s - 15.0) * s + 10.0) * s * s * s;
}

ShapeDerivativeField::ShapeDerivativeField(TrigPolynomial zeta, int dim)
    : zeta_(std::move(zeta)), dim_(dim) {
  if (dim != 2) {
    throw std::invalid_argument(
        "only the planar (n = 2) shape-derivative field is evaluable");
  }
}

double ShapeDerivativeField::operator()(double r, double theta) const {
  if (r < 0.0 || r > 1.0 + 1e-12) {
    throw std::domain_error("shape derivative is defined on the closed unit disk");
  }
  r = std::min(r, 1.0);
  const double transported = r * radial_cutoff(r) * zeta_(theta);
  return (harmonic_extension(zeta_, r, theta) - transported) / dim_;
}

double shape_derivative(const TrigPolynomial& zeta, double r, double theta) {
  return ShapeDerivativeField(zeta)(r, theta);
}

namespace {

// Coefficient 1-norm; the natural scale for "is this derivative zero".
double coeff_norm(const TrigPolynomial& p) {
  double n = 0.0;
  for (const auto& [k, c] : p.cos_coeffs()) n += std::abs(c);
  for (const auto& [k, s] : p.sin_coeffs()) n += std::abs(s);
  return n;
}

CriticalType classify(double second_derivative, double scale) {
  if (std::abs(second_derivative) <= 1e-9 * std::max(scale, 1e-30)) {
    return CriticalType::inflection;
  }
  return second_derivative < 0.0 ? CriticalType::maximum : CriticalType::minimum;
}

}  // namespace

FailPointPrediction trig_profile_argmax(const TrigPolynomial& profile, Arc arc) {
  if (!(arc.hi > arc.lo)) throw std::invalid_argument("search arc must be nonempty");

  FailPointPrediction out;
  if (profile.is_constant()) {
    out.degenerate = true;
    out.predicted_angle = wrap_angle(arc.lo);
    out.predicted_value = profile(arc.lo);
    return out;
  }

  const TrigPolynomial d1 = profile.derivative();
  const TrigPolynomial d2 = d1.derivative();
  const double d1_scale = coeff_norm(d1);
  const double d2_scale = coeff_norm(d2);
  const bool periodic = arc.full_circle();

  const int n = std::max({64, static_cast<int>(std::lround(4096.0 * arc.length() / two_pi)),
                          16 * (profile.max_mode() + 1)});
  const int samples = periodic ? n : n + 1;
  const double step = arc.length() / n;

  std::vector<double> xs(samples), dv(samples);
  for (int i = 0; i < samples; ++i) {
    xs[i] = arc.lo + step * i;
    dv[i] = d1(xs[i]);
  }

  // Critical points: sign changes (or zeros) of the derivative, Newton-refined.
  std::vector<double> roots;
  const auto push_root = [&roots](double x) {
    for (double r : roots) {
      if (std::abs(r - x) < 1e-10) return;
    }
    roots.push_back(x);
  };
  const detail::Fn g = [&d1](double x) { return d1(x); };
  const detail::Fn gp = [&d2](double x) { return d2(x); };
  const int segments = periodic ? samples : samples - 1;
  for (int i = 0; i < segments; ++i) {
    const double a = xs[i];
    const double b = a + step;
    const double fa = dv[i];
    const double fb = periodic ? dv[(i + 1) % samples] : dv[i + 1];
    if (fa == 0.0) push_root(a);
    if ((fa < 0.0) != (fb < 0.0)) {
      const auto res = detail::newton_bisection(g, gp, 0.5 * (a + b), a, b);
      if (res.converged) push_root(res.x);
    }
  }
  std::sort(roots.begin(), roots.end());

  if (!periodic) {
    // endpoints that are themselves critical (symmetry axes, typically)
    for (double end : {arc.lo, arc.hi}) {
      if (std::abs(d1(end)) <= 1e-10 * std::max(d1_scale, 1e-30)) push_root(end);
    }
    std::sort(roots.begin(), roots.end());
  }

  for (double root : roots) {
    CriticalPoint cp;
    cp.angle = periodic ? wrap_angle(root) : root;
    cp.value = profile(root);
    cp.type = classify(d2(root), d2_scale);
    cp.endpoint = !periodic && (std::abs(root - arc.lo) < 1e-12 ||
                                std::abs(root - arc.hi) < 1e-12);
    out.critical_points.push_back(cp);
  }
  if (periodic) {
    std::sort(out.critical_points.begin(), out.critical_points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.angle < b.angle; });
    // drop duplicates straddling the 0 == 2pi seam
    while (out.critical_points.size() > 1 &&
           two_pi - out.critical_points.back().angle + out.critical_points.front().angle < 1e-9) {
      out.critical_points.pop_back();
    }
  }

  // Global maximum over the closed arc: best critical max vs. arc endpoints.
  bool have = false;
  double best_angle = 0.0, best_value = 0.0;
  Nondegeneracy nd = Nondegeneracy::not_applicable;
  bool best_endpoint = false;
  const auto consider = [&](double angle, double value, Nondegeneracy kind, bool endpoint) {
    const bool better = !have || value > best_value + 1e-15 * std::abs(best_value) ||
                        (value >= best_value - 1e-15 * std::abs(best_value) && angle < best_angle);
    if (better) {
      have = true;
      best_angle = angle;
      best_value = value;
      nd = kind;
      best_endpoint = endpoint;
    }
  };

  for (const auto& cp : out.critical_points) {
    if (cp.type != CriticalType::maximum && cp.type != CriticalType::inflection) continue;
    const Nondegeneracy kind = cp.type == CriticalType::maximum
                                   ? Nondegeneracy::nondegenerate
                                   : Nondegeneracy::degenerate;
    consider(cp.angle, cp.value, kind, false);
  }
  if (!periodic) {
    for (double end : {arc.lo, arc.hi}) {
      const double dval = d1(end);
      const bool critical = std::abs(dval) <= 1e-10 * std::max(d1_scale, 1e-30);
      Nondegeneracy kind = Nondegeneracy::not_applicable;
      if (critical) {
        kind = classify(d2(end), d2_scale) == CriticalType::maximum
                   ? Nondegeneracy::nondegenerate
                   : Nondegeneracy::degenerate;
      }
      consider(end, profile(end), kind, true);
    }
  }

  out.predicted_angle = best_angle;
  out.predicted_value = best_value;
  out.nondegeneracy = nd;

  // The reported maximum always appears in the critical-point inventory.
  bool listed = false;
  for (auto& cp : out.critical_points) {
    if (std::abs(cp.angle - best_angle) < 1e-9) {
      cp.endpoint = cp.endpoint || best_endpoint;
      listed = true;
      break;
    }
  }
  if (!listed) {
    out.critical_points.push_back(
        {best_angle, best_value, CriticalType::maximum, best_endpoint});
    std::sort(out.critical_points.begin(), out.critical_points.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.angle < b.angle; });
  }
  return out;
}

FailPointPrediction predict_fail_point(const TrigPolynomial& zeta, Arc arc) {
  return trig_profile_argmax(fail_point_functional(zeta), arc);
}

FailPointPrediction predict_curvature_min(const TrigPolynomial& zeta, Arc arc) {
  return trig_profile_argmax(curvature_linear_term(zeta), arc);
}

}  // namespace torsion
