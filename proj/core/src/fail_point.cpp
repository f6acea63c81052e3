#include "torsion/fail_point.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>

#include "torsion/detail/search.hpp"
#include "torsion/perturbation.hpp"

namespace torsion {

namespace {

constexpr double kTieTol = 1e-9;      // relative on the profile maximum
constexpr double kGroupTol = 1e-6;    // radians, symmetry-image merging
constexpr double kEndpointTol = 1e-7; // radians, arc-endpoint snap

double angular_distance(double a, double b) {
  double d = std::abs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, two_pi - d);
}

struct RefinedMax {
  double x = 0.0;
  double value = 0.0;
  bool endpoint = false;
  bool converged = true;
};

// Golden section localizes to the value-noise basin; two parabolic steps
// with windows above the noise floor then place the interpolant's vertex,
// where the interpolant derivative vanishes by construction. Smaller windows
// would amplify evaluation noise as eps/(|f''| h).
RefinedMax refine_local_max(const std::function<double(double)>& f, double lo,
                            double hi, const Arc& arc, bool periodic) {
  RefinedMax out;
  double x = detail::golden_section_max(f, lo, hi, 1e-10);
  bool interior_fit = false;
  for (double h : {1e-4, 2e-5}) {
    bool ok = false;
    const double v =
        detail::parabolic_max_vertex(x - h, f(x - h), x, f(x), x + h, f(x + h), ok);
    if (ok && v > lo && v < hi) {
      x = v;
      interior_fit = true;
    }
  }
  if (!periodic) {
    x = std::clamp(x, arc.lo, arc.hi);
    out.endpoint = x - arc.lo < kEndpointTol || arc.hi - x < kEndpointTol;
    if (out.endpoint) x = (x - arc.lo < kEndpointTol) ? arc.lo : arc.hi;
  }
  out.x = periodic ? wrap_angle(x) : x;
  out.value = f(x);
  out.converged = out.endpoint || interior_fit;
  return out;
}

// Union-find over reported angles; two angles join when one maps onto the
// other under the available reflections of zeta.
std::vector<int> group_by_symmetry(const std::vector<double>& angles, bool reflect,
                                   bool antipodal) {
  const int n = static_cast<int>(angles.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    return parent[i] == i ? i : parent[i] = find(parent[i]);
  };
  const auto related = [&](double a, double b) {
    if (angular_distance(a, b) < kGroupTol) return true;
    if (reflect && angular_distance(-a, b) < kGroupTol) return true;
    if (antipodal && angular_distance(a + std::numbers::pi, b) < kGroupTol) return true;
    if (reflect && antipodal &&
        angular_distance(std::numbers::pi - a, b) < kGroupTol) {
      return true;
    }
    return false;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (related(angles[i], angles[j])) parent[find(i)] = find(j);
    }
  }
  std::vector<int> label(n), remap(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (remap[root] < 0) remap[root] = next++;
    label[i] = remap[root];
  }
  return label;
}

}  // namespace

FailPointResult find_profile_max(const std::function<double(double)>& profile,
                                 Arc arc, int samples, bool reflect_symmetric,
                                 bool antipodal_symmetric) {
  if (!(arc.hi > arc.lo)) throw std::invalid_argument("search arc must be nonempty");
  const bool periodic = arc.full_circle();
  const int n = std::max(periodic ? 256 : 64,
                         static_cast<int>(std::lround(samples * arc.length() / two_pi)));
  const int count = periodic ? n : n + 1;
  const double step = arc.length() / n;

  std::vector<double> xs(count), vals(count);
  double vmax = -std::numeric_limits<double>::infinity();
  double vmin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    xs[i] = arc.lo + step * i;
    vals[i] = profile(xs[i]);
    vmax = std::max(vmax, vals[i]);
    vmin = std::min(vmin, vals[i]);
  }

  FailPointResult result;
  if (vmax - vmin <= kTieTol * std::max(std::abs(vmax), 1e-300)) {
    result.degenerate = true;
    result.max_value = vmax;
    return result;
  }

  std::vector<RefinedMax> refined;
  for (const auto& gm : detail::local_maxima(xs, vals, periodic)) {
    const double lo = periodic ? gm.x - step : std::max(arc.lo, gm.x - step);
    const double hi = periodic ? gm.x + step : std::min(arc.hi, gm.x + step);
    refined.push_back(refine_local_max(profile, lo, hi, arc, periodic));
  }

  double best = -std::numeric_limits<double>::infinity();
  for (const auto& rm : refined) best = std::max(best, rm.value);
  result.max_value = best;

  std::vector<RefinedMax> winners;
  for (const auto& rm : refined) {
    if (rm.value >= best - kTieTol * std::abs(best)) winners.push_back(rm);
  }
  std::sort(winners.begin(), winners.end(),
            [](const RefinedMax& a, const RefinedMax& b) { return a.x < b.x; });
  // collapse duplicates from adjacent brackets refining to the same peak
  std::vector<RefinedMax> unique;
  for (const auto& rm : winners) {
    if (!unique.empty() && angular_distance(unique.back().x, rm.x) < 1e-8) continue;
    unique.push_back(rm);
  }

  for (const auto& rm : unique) {
    result.angles.push_back(rm.x);
    result.endpoint.push_back(rm.endpoint);
    result.refinement_converged = result.refinement_converged && rm.converged;
  }
  result.symmetry_group =
      group_by_symmetry(result.angles, reflect_symmetric, antipodal_symmetric);
  return result;
}

FailPointResult find_fail_points(const TorsionSolution& solution, Arc arc, int samples) {
  const TrigPolynomial& zeta = solution.domain().zeta();
  auto result = find_profile_max(
      [&solution](double theta) { return solution.boundary_grad_sq(theta); }, arc,
      samples, zeta.cosine_only(), zeta.even_modes_only());
  result.profile = boundary_profile(solution, samples, arc);
  return result;
}

MonotonicityReport monotonicity_report(const std::function<double(double)>& profile,
                                       Arc arc, int samples) {
  if (samples < 512) throw std::invalid_argument("monotonicity check needs >= 512 samples");
  if (!(arc.hi > arc.lo)) throw std::invalid_argument("arc must be nonempty");

  MonotonicityReport report;
  report.samples = samples;
  std::vector<double> xs(samples), vals(samples);
  double scale = 0.0;
  for (int i = 0; i < samples; ++i) {
    xs[i] = arc.lo + arc.length() * i / (samples - 1);
    vals[i] = profile(xs[i]);
    scale = std::max(scale, std::abs(vals[i]));
  }
  const double flat_tol = 1e-12 * std::max(scale, 1e-300);

  // endpoint-adjacent differences are excluded: symmetric profiles flatten there
  int positive = 0, negative = 0;
  for (int i = 1; i + 2 < samples; ++i) {
    const double d = vals[i + 1] - vals[i];
    if (d > flat_tol) {
      ++positive;
    } else if (d < -flat_tol) {
      ++negative;
    }
  }
  report.increasing = positive >= negative;
  const double dominant = report.increasing ? 1.0 : -1.0;
  for (int i = 1; i + 2 < samples; ++i) {
    const double d = vals[i + 1] - vals[i];
    const bool with_trend = dominant * d > flat_tol;
    if (!with_trend) report.sign_changes.push_back({xs[i], xs[i + 1]});
  }
  report.monotone = report.sign_changes.empty();
  return report;
}

MonotonicityReport monotonicity_check(const TorsionSolution& solution, Arc arc,
                                      int samples) {
  return monotonicity_report(
      [&solution](double theta) { return solution.boundary_grad_sq(theta); }, arc,
      samples);
}

ConvergenceTable convergence_sweep(const TrigPolynomial& zeta,
                                   const std::vector<double>& t_list, Arc arc,
                                   const SolverOptions& options, int jobs) {
  if (t_list.empty()) throw std::invalid_argument("t list must be nonempty");
  for (size_t i = 0; i < t_list.size(); ++i) {
    if (!(t_list[i] > 0.0)) throw std::invalid_argument("t values must be positive");
    if (i > 0 && !(t_list[i] < t_list[i - 1])) {
      throw std::invalid_argument("t values must be strictly decreasing");
    }
  }
  const auto prediction = predict_fail_point(zeta, arc);
  if (prediction.degenerate) {
    throw std::invalid_argument("prediction is degenerate on this arc; nothing to track");
  }

  ConvergenceTable table;
  table.predicted_angle = prediction.predicted_angle;
  table.rows.resize(t_list.size());

  const auto run_row = [&](size_t i) {
    ConvergenceRow row;
    row.t = t_list[i];
    row.fail_angle_predicted = prediction.predicted_angle;
    try {
      const StarDomain domain(zeta, t_list[i]);
      const TorsionSolution solution = solve(domain, options);
      const FailPointResult fp = find_fail_points(solution, arc);
      if (fp.degenerate || fp.angles.empty()) {
        row.message = "numeric profile degenerate";
        return row;
      }
      // with symmetric ties, track the image nearest the prediction
      double bestAngle = fp.angles.front();
      for (double a : fp.angles) {
        if (angular_distance(a, prediction.predicted_angle) <
            angular_distance(bestAngle, prediction.predicted_angle)) {
          bestAngle = a;
        }
      }
      row.fail_angle_numeric = bestAngle;
      row.abs_error = angular_distance(bestAngle, prediction.predicted_angle);
      row.ok = true;
    } catch (const SolverError& err) {
      row.message = err.what();
    } catch (const std::invalid_argument& err) {
      row.message = err.what();
    }
    return row;
  };

  unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, t_list.size());
  if (workers <= 1) {
    for (size_t i = 0; i < t_list.size(); ++i) table.rows[i] = run_row(i);
  } else {
    std::vector<std::future<ConvergenceRow>> futures;
    futures.reserve(t_list.size());
    for (size_t i = 0; i < t_list.size(); ++i) {
      futures.push_back(std::async(std::launch::async, run_row, i));
    }
    for (size_t i = 0; i < t_list.size(); ++i) table.rows[i] = futures[i].get();
  }

  for (size_t i = 0; i < table.rows.size(); ++i) {
    auto& row = table.rows[i];
    if (i == 0 || !row.ok || !table.rows[i - 1].ok || row.abs_error == 0.0) {
      row.error_ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
      row.error_ratio = table.rows[i - 1].abs_error / row.abs_error;
    }
  }
  return table;
}

DistanceReport distance_report(const FailPointResult& result, const StarDomain& domain) {
  const ContactPoints contacts = contact_points(domain);
  DistanceReport report;
  report.fail_angles = result.angles;
  report.contact_angles = contacts.angles;
  if (result.degenerate || contacts.whole_boundary) {
    report.degenerate = true;
    return report;
  }

  const auto point = [&domain](double theta) { return domain.boundary_point(theta); };
  const auto dist = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
  };

  report.distance = std::numeric_limits<double>::infinity();
  for (double f : result.angles) {
    for (double c : contacts.angles) {
      report.distance = std::min(report.distance, dist(point(f), point(c)));
    }
  }

  // diameter: coarse pair scan, then alternating 1-D refinements
  constexpr int kGrid = 1024;
  std::vector<std::array<double, 2>> pts(kGrid);
  for (int i = 0; i < kGrid; ++i) pts[i] = point(two_pi * i / kGrid);
  double best = 0.0;
  double th1 = 0.0, th2 = 0.0;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = i + 1; j < kGrid; ++j) {
      const double d = dist(pts[i], pts[j]);
      if (d > best) {
        best = d;
        th1 = two_pi * i / kGrid;
        th2 = two_pi * j / kGrid;
      }
    }
  }
  const double h = two_pi / kGrid;
  for (int round = 0; round < 4; ++round) {
    th1 = detail::golden_section_max(
        [&](double a) { return dist(point(a), point(th2)); }, th1 - h, th1 + h, 1e-12);
    th2 = detail::golden_section_max(
        [&](double b) { return dist(point(th1), point(b)); }, th2 - h, th2 + h, 1e-12);
  }
  report.diameter = dist(point(th1), point(th2));
  report.ratio = report.distance / report.diameter;
  return report;
}

}  // namespace torsion
