#include "torsion/rectangle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "torsion/detail/search.hpp"

namespace torsion {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kTermCap = 1 << 20;
// Catalan's constant G = sum_k (-1)^k / (2k+1)^2, cross-checked in tests
// against the accelerated alternating sum.
constexpr double kCatalan = 0.9159655941772190;

// cosh(a)/cosh(b) for |a| <= b without overflow:
//   e^{|a|-b} (1 + e^{-2|a|}) / (1 + e^{-2b}).
double cosh_ratio(double a, double b) {
  a = std::abs(a);
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

// sinh(a)/cosh(b), signed, same regime.
double sinh_cosh_ratio(double a, double b) {
  const double sign = a < 0.0 ? -1.0 : 1.0;
  a = std::abs(a);
  return sign * std::exp(a - b) * (-std::expm1(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// |d_nu u| along the midline of a side: B - (8B/pi^2) sum m^{-2} cosh ratio,
// where B is the half-extent across the side and A along it. Adaptive term
// count, exponentially convergent away from corners.
double midline_gradient(double a_half, double b_half, double s, int min_terms) {
  KahanSum sum;
  for (int k = 0; k < kTermCap; ++k) {
    const double m = 2.0 * k + 1.0;
    const double beta = m * kPi / (2.0 * b_half);
    const double term = cosh_ratio(beta * s, beta * a_half) / (m * m);
    sum.add(term);
    if (k + 1 >= min_terms && term < 1e-18) break;
  }
  return b_half - (8.0 * b_half / (kPi * kPi)) * sum.sum;
}

// u_xy on the quarter-side: (4/pi) sum m^{-1} sinh/cosh ratio.
double corner_mixed_derivative(double a_half, double b_half, double s, int min_terms) {
  KahanSum sum;
  for (int k = 0; k < kTermCap; ++k) {
    const double m = 2.0 * k + 1.0;
    const double beta = m * kPi / (2.0 * b_half);
    const double term = sinh_cosh_ratio(beta * s, beta * a_half) / m;
    sum.add(term);
    if (k + 1 >= min_terms && std::abs(term) < 1e-17) break;
  }
  return (4.0 / kPi) * sum.sum;
}

bool horizontal(Side side) { return side == Side::top || side == Side::bottom; }

}  // namespace

std::string side_name(Side side) {
  switch (side) {
    case Side::right: return "right";
    case Side::top: return "top";
    case Side::left: return "left";
    case Side::bottom: return "bottom";
  }
  return "?";
}

RectangleSolution::RectangleSolution(RectangleDomain domain, int terms)
    : domain_(domain), terms_(terms) {
  if (terms < 8) throw std::invalid_argument("series truncation must be >= 8 terms");
}

void RectangleSolution::check_inside(double x, double y) const {
  const double L = domain_.half_length();
  const double l = domain_.half_width();
  if (std::abs(x) > L * (1.0 + 1e-12) || std::abs(y) > l * (1.0 + 1e-12)) {
    throw std::domain_error("evaluation point lies outside the closed rectangle");
  }
}

namespace {

struct SeriesEval {
  double u;
  double ux;
  double uy;
};

// N-term series with the particular part carried by y and the cosh factor
// in x; per-term decay e^{-beta_k (L - |x|)} with beta_k = (2k+1) pi / (2l).
SeriesEval primary_series(double L, double l, double x, double y, int terms) {
  KahanSum su, sx, sy;
  double sign = 1.0;
  for (int k = 0; k < terms; ++k, sign = -sign) {
    const double m = 2.0 * k + 1.0;
    const double beta = m * kPi / (2.0 * l);
    const double cr = cosh_ratio(beta * x, beta * L);
    const double sr = sinh_cosh_ratio(beta * x, beta * L);
    su.add(sign / (m * m * m) * cr * std::cos(beta * y));
    sx.add(sign / (m * m) * sr * std::cos(beta * y));
    sy.add(sign / (m * m) * cr * std::sin(beta * y));
  }
  const double c = 8.0 * l / (kPi * kPi);
  SeriesEval out;
  out.u = 0.5 * (l * l - y * y) - (16.0 * l * l / (kPi * kPi * kPi)) * su.sum;
  out.ux = -c * sx.sum;
  out.uy = -y + c * sy.sum;
  return out;
}

// The same solution expanded along the other axis; equivalent by the
// uniqueness of the torsion function, and exponentially convergent in
// l - |y| instead of L - |x|.
SeriesEval swapped_series(double L, double l, double x, double y, int terms) {
  const SeriesEval s = primary_series(l, L, y, x, terms);
  return {s.u, s.uy, s.ux};
}

// Pick the representation whose term decay is faster at this point. At
// L = l the choice mirrors under (x, y) -> (y, x), which keeps the square's
// diagonal symmetry exact in floating point.
SeriesEval best_series(double L, double l, double x, double y, int terms) {
  const bool use_primary = (L - std::abs(x)) / l >= (l - std::abs(y)) / L;
  return use_primary ? primary_series(L, l, x, y, terms)
                     : swapped_series(L, l, x, y, terms);
}

}  // namespace

double RectangleSolution::value(double x, double y) const {
  check_inside(x, y);
  return best_series(domain_.half_length(), domain_.half_width(), x, y, terms_).u;
}

std::array<double, 2> RectangleSolution::gradient(double x, double y) const {
  check_inside(x, y);
  const SeriesEval s =
      best_series(domain_.half_length(), domain_.half_width(), x, y, terms_);
  return {s.ux, s.uy};
}

double RectangleSolution::truncation_bound() const {
  const double l = domain_.half_width();
  return l * l / (kPi * kPi * kPi * terms_ * terms_);
}

RectEval rect_eval(const RectangleDomain& domain, double x, double y, int terms) {
  const RectangleSolution solution(domain, terms);
  return {solution.value(x, y), solution.gradient(x, y)};
}

double side_normal_gradient(const RectangleDomain& domain, Side side, double s,
                            int min_terms) {
  const double L = domain.half_length();
  const double l = domain.half_width();
  if (horizontal(side)) {
    if (std::abs(s) > L * (1.0 + 1e-12)) throw std::domain_error("side coordinate out of range");
    return midline_gradient(L, l, s, min_terms);
  }
  if (std::abs(s) > l * (1.0 + 1e-12)) throw std::domain_error("side coordinate out of range");
  return midline_gradient(l, L, s, min_terms);
}

double alternating_series_sum(const std::function<double(int)>& a, int lead_terms) {
  if (lead_terms < 2) throw std::invalid_argument("need at least two terms");
  std::vector<double> partial(lead_terms);
  double s = 0.0, sign = 1.0;
  for (int k = 0; k < lead_terms; ++k, sign = -sign) {
    s += sign * a(k);
    partial[k] = s;
  }
  // Euler transformation: repeated averaging of the partial sums.
  for (int level = 1; level < lead_terms; ++level) {
    for (int i = 0; i + level < lead_terms; ++i) {
      partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    }
  }
  return partial[0];
}

double right_side_midpoint_gradient(const RectangleDomain& domain) {
  const double L = domain.half_length();
  const double l = domain.half_width();
  // |u_x(L,0)| = (8 l/pi^2) [ sum (-1)^k m^{-2} - 2 sum (-1)^k m^{-2}/(e^{m pi L/l}+1) ]
  KahanSum correction;
  for (int k = 0; k < kTermCap; ++k) {
    const double m = 2.0 * k + 1.0;
    const double e = std::exp(m * kPi * L / l);
    const double term = (k % 2 == 0 ? 1.0 : -1.0) / (m * m * (e + 1.0));
    correction.add(term);
    if (std::abs(term) < 1e-19) break;
  }
  return (8.0 * l / (kPi * kPi)) * (kCatalan - 2.0 * correction.sum);
}

RectFailPoints rect_fail_points(const RectangleDomain& domain, int terms,
                                int side_samples) {
  if (terms < 8) throw std::invalid_argument("series truncation must be >= 8 terms");
  if (side_samples < 128) throw std::invalid_argument("need side_samples >= 128");

  RectFailPoints result;
  const double L = domain.half_length();
  const double l = domain.half_width();

  for (Side side : {Side::right, Side::top, Side::left, Side::bottom}) {
    const double half = horizontal(side) ? L : l;
    const auto g = [&domain, side, terms](double s) {
      return side_normal_gradient(domain, side, s, terms);
    };

    SideProfile profile;
    profile.side = side;
    profile.arc_param.resize(side_samples);
    profile.grad_norm.resize(side_samples);
    int best = 0;
    for (int i = 0; i < side_samples; ++i) {
      const double s = -half + (i + 1) * (2.0 * half) / (side_samples + 1);
      profile.arc_param[i] = s;
      profile.grad_norm[i] = g(s);
      if (profile.grad_norm[i] > profile.grad_norm[best]) best = i;
    }

    const double spacing = 2.0 * half / (side_samples + 1);
    const double lo = std::max(profile.arc_param[best] - spacing, -half);
    const double hi = std::min(profile.arc_param[best] + spacing, half);
    const double pos = detail::golden_section_max(g, lo, hi, 1e-13);

    SideMaximum sm;
    sm.side = side;
    sm.position = pos;
    sm.value = g(pos);
    switch (side) {
      case Side::right: sm.point = {L, pos}; break;
      case Side::top: sm.point = {pos, l}; break;
      case Side::left: sm.point = {-L, pos}; break;
      case Side::bottom: sm.point = {pos, -l}; break;
    }
    result.side_maxima.push_back(sm);
    result.profiles.push_back(std::move(profile));
  }

  result.max_value = 0.0;
  for (const auto& sm : result.side_maxima) result.max_value = std::max(result.max_value, sm.value);
  for (const auto& sm : result.side_maxima) {
    if (sm.value >= result.max_value * (1.0 - 1e-9)) result.global_maxima.push_back(sm);
  }
  return result;
}

MonotonicityCertificate rect_monotonicity_certificate(const RectangleDomain& domain,
                                                      int terms, int side_samples) {
  if (terms < 8) throw std::invalid_argument("series truncation must be >= 8 terms");
  if (side_samples < 128) throw std::invalid_argument("need side_samples >= 128");

  const double L = domain.half_length();
  const double l = domain.half_width();
  MonotonicityCertificate cert;
  cert.samples_per_side = side_samples;
  bool first = true;

  const auto scan = [&](Side side, double half, double a_half, double b_half) {
    const double margin = std::min(1e-3, half / 4.0);
    for (int i = 0; i < side_samples; ++i) {
      const double s = margin + i * (half - 2.0 * margin) / (side_samples - 1);
      const double uxy = corner_mixed_derivative(a_half, b_half, s, terms);
      if (first || uxy < cert.min_value) {
        first = false;
        cert.min_value = uxy;
        cert.min_side = side;
        cert.min_position = s;
      }
    }
  };
  scan(Side::top, L, L, l);    // (0, L) x {l}
  scan(Side::right, l, l, L);  // {L} x (0, l)

  cert.passed = cert.min_value > 0.0;
  return cert;
}

}  // namespace torsion
