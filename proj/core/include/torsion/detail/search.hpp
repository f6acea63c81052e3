#pragma once

#include <functional>
#include <vector>

namespace torsion::detail {

using Fn = std::function<double(double)>;

/// Golden-section argmin of f over [a, b]; |return - argmin| <= tol.
double golden_section_min(const Fn& f, double a, double b, double tol = 1e-12,
                          int max_iter = 200);
double golden_section_max(const Fn& f, double a, double b, double tol = 1e-12,
                          int max_iter = 200);

/// Vertex of the parabola through three samples. ok=false when the points
/// are collinear or the fit is concave-up (no maximum).
double parabolic_max_vertex(double x0, double f0, double x1, double f1,
                            double x2, double f2, bool& ok);

struct NewtonResult {
  double x = 0.0;
  bool converged = false;
};

/// Newton iteration for g(x) = 0 started at x0, kept inside [a, b]; any step
/// leaving the bracket (or a vanishing derivative) falls back to bisection,
/// which requires a sign change of g over the current bracket.
NewtonResult newton_bisection(const Fn& g, const Fn& g_prime, double x0,
                              double a, double b, int max_iter = 60,
                              double step_tol = 1e-13);

struct GridMax {
  int index = 0;       ///< grid index of the sample
  double x = 0.0;
  double value = 0.0;
  bool at_lo = false;  ///< non-interior maximum at the left arc endpoint
  bool at_hi = false;
};

/// Indices of local maxima of sampled values. For periodic grids the
/// neighbourhood wraps; otherwise the two endpoints are eligible maxima and
/// get flagged. Plateaus report their first index only.
std::vector<GridMax> local_maxima(const std::vector<double>& xs,
                                  const std::vector<double>& values,
                                  bool periodic);

}  // namespace torsion::detail
