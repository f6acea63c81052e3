#include "torsion/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "torsion/detail/search.hpp"

namespace torsion {

double wrap_angle(double theta) {
  double w = std::fmod(theta, two_pi);
  if (w < 0.0) w += two_pi;
  if (w >= two_pi) w = 0.0;  // fmod rounding at the seam
  return w;
}

StarDomain::StarDomain(TrigPolynomial zeta, double t)
    : zeta_(std::move(zeta)), t_(t) {
  if (!std::isfinite(t)) throw std::invalid_argument("perturbation amplitude must be finite");
  constexpr int kGrid = 4096;
  for (int i = 0; i < kGrid; ++i) {
    const double theta = two_pi * i / kGrid;
    if (!(radius(theta) > 0.0)) {
      throw std::invalid_argument("star domain radius must stay positive: r(" +
                                  std::to_string(theta) + ") = " +
                                  std::to_string(radius(theta)));
    }
  }
}

std::array<double, 2> StarDomain::boundary_point(double theta) const {
  const double r = radius(theta);
  return {r * std::cos(theta), r * std::sin(theta)};
}

RectangleDomain::RectangleDomain(double half_length, double half_width)
    : half_length_(half_length), half_width_(half_width) {
  if (!(half_width > 0.0) || !(half_length >= half_width)) {
    throw std::invalid_argument("rectangle requires L >= l > 0");
  }
}

namespace {

// Hoists the derivative polynomials so grid sweeps do not rebuild them.
class CurvatureEval {
 public:
  explicit CurvatureEval(const StarDomain& domain)
      : domain_(domain),
        zeta_p_(domain.zeta().derivative()),
        zeta_pp_(zeta_p_.derivative()) {}

  double operator()(double theta) const {
    const double t = domain_.t();
    const double r = 1.0 + t * domain_.zeta()(theta);
    const double rp = t * zeta_p_(theta);
    const double rpp = t * zeta_pp_(theta);
    const double denom = std::pow(r * r + rp * rp, 1.5);
    return (r * r + 2.0 * rp * rp - r * rpp) / denom;
  }

 private:
  const StarDomain& domain_;
  TrigPolynomial zeta_p_;
  TrigPolynomial zeta_pp_;
};

}  // namespace

double curvature(const StarDomain& domain, double theta) {
  return CurvatureEval(domain)(theta);
}

TrigPolynomial curvature_linear_term(const TrigPolynomial& zeta) {
  return zeta.mode_multiplied([](int k) { return 1.0 - static_cast<double>(k) * k; });
}

ContactPoints contact_points(const StarDomain& domain) {
  if (!domain.centrally_symmetric()) {
    throw std::invalid_argument(
        "contact points are only defined here for centrally symmetric domains "
        "(zeta with even modes only)");
  }
  ContactPoints result;
  const auto r = [&domain](double theta) { return domain.radius(theta); };

  constexpr int kGrid = 4096;
  std::vector<double> xs(kGrid), vals(kGrid);
  double grid_min = r(0.0), grid_max = grid_min;
  for (int i = 0; i < kGrid; ++i) {
    xs[i] = two_pi * i / kGrid;
    vals[i] = r(xs[i]);
    grid_min = std::min(grid_min, vals[i]);
    grid_max = std::max(grid_max, vals[i]);
  }

  if (domain.is_circle() || grid_max - grid_min <= 1e-13 * std::max(1.0, grid_max)) {
    result.whole_boundary = true;
    result.min_radius = grid_min;
    return result;
  }

  // Refine every grid-local minimum on r' = t zeta' (value-based search
  // cannot localize the flat minima that arise when zeta'' vanishes there),
  // then keep candidates within relative tolerance 1e-9 of the best radius.
  const TrigPolynomial zeta_p = domain.zeta().derivative();
  const TrigPolynomial zeta_pp = zeta_p.derivative();
  const double t = domain.t();
  const auto rp = [&](double theta) { return t * zeta_p(theta); };
  const auto rpp = [&](double theta) { return t * zeta_pp(theta); };
  const auto neg_r = [&r](double theta) { return -r(theta); };
  std::vector<std::pair<double, double>> candidates;  // (angle, radius)
  const auto maxima = detail::local_maxima(
      xs, [&vals] { std::vector<double> neg(vals.size());
                    for (size_t i = 0; i < vals.size(); ++i) neg[i] = -vals[i];
                    return neg; }(), /*periodic=*/true);
  for (const auto& m : maxima) {
    const double lo = xs[m.index] - two_pi / kGrid;
    const double hi = xs[m.index] + two_pi / kGrid;
    const auto root = detail::newton_bisection(rp, rpp, xs[m.index], lo, hi);
    const double theta =
        root.converged ? root.x : detail::golden_section_max(neg_r, lo, hi, 1e-13);
    double wrapped = wrap_angle(theta);
    if (two_pi - wrapped < 1e-9) wrapped = 0.0;  // refined across the seam
    candidates.emplace_back(wrapped, r(theta));
  }

  double best = candidates.front().second;
  for (const auto& [theta, rv] : candidates) best = std::min(best, rv);
  result.min_radius = best;

  std::vector<double> angles;
  for (const auto& [theta, rv] : candidates) {
    if (rv <= best * (1.0 + 1e-9)) angles.push_back(theta);
  }
  std::sort(angles.begin(), angles.end());
  // merge refinement duplicates (also across the 0 == 2pi seam)
  for (double a : angles) {
    const bool dup = !result.angles.empty() &&
                     (a - result.angles.back() < 1e-7 ||
                      (two_pi - a) + result.angles.front() < 1e-7);
    if (!dup) result.angles.push_back(a);
  }
  return result;
}

ConvexityReport is_convex(const StarDomain& domain, int grid_size) {
  if (grid_size < 256) throw std::invalid_argument("convexity grid must have >= 256 points");
  const CurvatureEval kappa(domain);
  ConvexityReport report;
  report.min_curvature = kappa(0.0);
  report.min_angle = 0.0;
  for (int i = 1; i < grid_size; ++i) {
    const double theta = two_pi * i / grid_size;
    const double k = kappa(theta);
    if (k < report.min_curvature) {  // ties keep the smallest angle
      report.min_curvature = k;
      report.min_angle = theta;
    }
  }
  report.convex = report.min_curvature > 0.0;
  return report;
}

}  // namespace torsion
