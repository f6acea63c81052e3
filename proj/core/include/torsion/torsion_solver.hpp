#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "torsion/geometry.hpp"

namespace torsion {

class SolverError : public std::runtime_error {
public:
  enum class Kind { ill_conditioned, residual };

  SolverError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

struct SolverOptions {
  int degree = 32;        ///< highest harmonic mode K in the basis
  int collocation = 256;  ///< boundary fit points M, must satisfy M >= 4K + 2
  double rtol = 1e-8;     ///< acceptable boundary residual
  double condition_limit = 1e12;
};

/// Solution of -Lap u = 1, u = 0 on the boundary of a StarDomain, written as
/// u = h - |x|^2/4 with h harmonic. h is expanded in the scaled basis
/// {1, (r/R)^k cos(k theta), (r/R)^k sin(k theta)} and fitted to |x|^2/4 on
/// equally spaced boundary points by least squares. The PDE holds exactly by
/// construction; only the boundary condition carries a residual, which is
/// measured on a half-spacing-shifted grid. Evaluations are pure and
/// thread-safe; gradients are analytic (complex derivative of the basis).
class TorsionSolution {
public:
  double value(double r, double theta) const;
  std::array<double, 2> gradient(double r, double theta) const;  // cartesian

  /// |grad u|^2 at the boundary point (r(theta), theta); equals the squared
  /// normal derivative since u vanishes on the boundary.
  double boundary_grad_sq(double theta) const;

  struct Eval {
    double u;
    std::array<double, 2> grad;
  };
  /// Value and gradient at an interior (or boundary) point; throws
  /// std::domain_error outside the closed domain.
  Eval interior_eval(double r, double theta) const;

  const StarDomain& domain() const noexcept { return domain_; }
  int degree() const noexcept { return degree_; }
  int collocation_count() const noexcept { return collocation_; }
  const std::vector<double>& coefficients() const noexcept { return coeffs_; }
  double basis_scale() const noexcept { return scale_; }
  double boundary_residual() const noexcept { return boundary_residual_; }
  double condition_estimate() const noexcept { return condition_estimate_; }

private:
  friend TorsionSolution solve(const StarDomain&, const SolverOptions&);

  explicit TorsionSolution(StarDomain domain) : domain_(std::move(domain)) {}

  StarDomain domain_;
  int degree_ = 0;
  int collocation_ = 0;
  std::vector<double> coeffs_;  // [c0, a1, b1, a2, b2, ...]
  double scale_ = 1.0;          // bounding radius R used to normalize the basis
  double boundary_residual_ = 0.0;
  double condition_estimate_ = 0.0;
};

/// Deterministic least-squares fit (rank-revealing QR); throws SolverError
/// when the collocation matrix condition exceeds the limit or the boundary
/// residual misses rtol.
TorsionSolution solve(const StarDomain& domain, const SolverOptions& options = {});

double boundary_grad_sq(const TorsionSolution& solution, double theta);

/// Saint-Venant torsional rigidity T = integral of u over the domain,
/// by Gauss-Legendre quadrature along rays (the integrand is a polynomial in
/// r) and trapezoid in theta (spectrally accurate, periodic).
double saint_venant_functional(const TorsionSolution& solution, int theta_samples = 2048);

/// Dense boundary table tying the numeric solution to the first-order theory.
struct BoundaryProfile {
  struct Row {
    double theta;
    double r;
    double kappa;
    double grad_sq_numeric;
    double grad_sq_firstorder;
    double f_value;
  };
  std::vector<Row> rows;  ///< theta strictly increasing in [0, 2pi) or the arc
  double t = 0.0;
  int degree = 0;
  int samples = 0;
  double residual = 0.0;
};

BoundaryProfile boundary_profile(const TorsionSolution& solution, int samples = 4096,
                                 Arc arc = {});

}  // namespace torsion
