#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "torsion/geometry.hpp"

namespace torsion {

/// Classical series solution of -Lap u = 1, u = 0 on (-L,L) x (-l,l):
///   u(x,y) = (l^2 - y^2)/2
///          - (16 l^2/pi^3) sum_k (-1)^k (2k+1)^{-3}
///            cosh((2k+1)pi x/(2l)) / cosh((2k+1)pi L/(2l)) cos((2k+1)pi y/(2l)).
/// Evaluation uses N terms of this expansion or of its axis-swapped twin
/// (the same function by uniqueness), whichever decays faster at the point;
/// the cosh ratio is computed in log space so large L/l cannot overflow.
class RectangleSolution {
public:
  RectangleSolution(RectangleDomain domain, int terms);

  double value(double x, double y) const;
  std::array<double, 2> gradient(double x, double y) const;

  const RectangleDomain& domain() const noexcept { return domain_; }
  int terms() const noexcept { return terms_; }

  /// Analytic bound on the truncation error of the N-term series (worst on
  /// the short sides, where the cosh ratio is 1).
  double truncation_bound() const;

private:
  void check_inside(double x, double y) const;

  RectangleDomain domain_;
  int terms_;
};

struct RectEval {
  double u;
  std::array<double, 2> grad;
};

/// One-shot evaluation with an N-term series; throws std::domain_error
/// outside the closed rectangle. Requires terms >= 8.
RectEval rect_eval(const RectangleDomain& domain, double x, double y, int terms);

enum class Side { right, top, left, bottom };

std::string side_name(Side side);

/// |normal derivative of u| on a side, evaluated with whichever of the two
/// equivalent series orientations converges exponentially there. `s` is the
/// coordinate along the side (x on top/bottom, y on left/right). The term
/// count adapts from min_terms up; accuracy degrades only within ~1e-6 of a
/// corner where both orientations converge slowly.
double side_normal_gradient(const RectangleDomain& domain, Side side, double s,
                            int min_terms = 30);

/// |u_x(L, 0)|, the gradient at the midpoint of the right (short, when L > l)
/// side, via the tanh split: tanh z = 1 - 2/(e^{2z} + 1). The slowly
/// convergent "1" part is the alternating sum over (2k+1)^{-2} (accelerated
/// to machine precision); the correction converges exponentially.
double right_side_midpoint_gradient(const RectangleDomain& domain);

/// Euler-accelerated sum of sum_{k>=0} (-1)^k a(k) using `lead_terms` terms,
/// with binomial averaging of the partial-sum tail.
double alternating_series_sum(const std::function<double(int)>& a, int lead_terms = 64);

struct SideProfile {
  Side side;
  std::vector<double> arc_param;  ///< coordinate along the side
  std::vector<double> grad_norm;  ///< |grad u| = |normal derivative|
};

struct SideMaximum {
  Side side;
  double position;  ///< refined coordinate along the side
  double value;     ///< |grad u| there
  std::array<double, 2> point;
};

struct RectFailPoints {
  std::vector<SideMaximum> side_maxima;    ///< one per side, in Side order
  std::vector<SideMaximum> global_maxima;  ///< ties within 1e-9 relative
  double max_value = 0.0;
  std::vector<SideProfile> profiles;
};

/// Per-side argmax of |grad u| (sampling + golden-section refinement) and the
/// global winners. Requires terms >= 8 and side_samples >= 128.
RectFailPoints rect_fail_points(const RectangleDomain& domain, int terms = 30,
                                int side_samples = 256);

struct MonotonicityCertificate {
  bool passed = false;       ///< min u_xy > 0 over both sampled quarter-sides
  double min_value = 0.0;
  Side min_side = Side::top;
  double min_position = 0.0;
  int samples_per_side = 0;
};

/// Certifies u_xy > 0 on (0,L) x {l} and {L} x (0,l) by termwise series
/// evaluation at side_samples points, staying 1e-3 away from corners (and
/// midpoints, where u_xy vanishes by symmetry).
MonotonicityCertificate rect_monotonicity_certificate(const RectangleDomain& domain,
                                                      int terms = 30,
                                                      int side_samples = 128);

}  // namespace torsion
