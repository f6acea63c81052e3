#include "torsion/detail/search.hpp"

#include <cmath>

namespace torsion::detail {

namespace {
constexpr double kInvPhi = 0.6180339887498949;  // 1/phi
}

double golden_section_min(const Fn& f, double a, double b, double tol, int max_iter) {
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

double golden_section_max(const Fn& f, double a, double b, double tol, int max_iter) {
  return golden_section_min([&f](double x) { return -f(x); }, a, b, tol, max_iter);
}

double parabolic_max_vertex(double x0, double f0, double x1, double f1,
                            double x2, double f2, bool& ok) {
  const double d1 = (x1 - x0) * (f1 - f2);
  const double d2 = (x1 - x2) * (f1 - f0);
  const double denom = 2.0 * (d1 - d2);
  const double numer = (x1 - x0) * d1 - (x1 - x2) * d2;
  if (denom == 0.0 || !std::isfinite(denom)) {
    ok = false;
    return x1;
  }
  // A maximum needs a concave fit: the chord slope must drop left to right.
  const double slope_left = (f1 - f0) / (x1 - x0);
  const double slope_right = (f2 - f1) / (x2 - x1);
  if (!(slope_right < slope_left)) {
    ok = false;
    return x1;
  }
  ok = true;
  return x1 - numer / denom;
}

NewtonResult newton_bisection(const Fn& g, const Fn& g_prime, double x0,
                              double a, double b, int max_iter, double step_tol) {
  double lo = a, hi = b;
  double glo = g(lo), ghi = g(hi);
  const bool bracketed = (glo == 0.0) || (ghi == 0.0) || (glo < 0.0) != (ghi < 0.0);
  double x = x0;
  for (int it = 0; it < max_iter; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return {x, true};
    if (bracketed) {
      if ((gx < 0.0) == (glo < 0.0)) {
        lo = x;
        glo = gx;
      } else {
        hi = x;
        ghi = gx;
      }
    }
    const double dg = g_prime(x);
    double next;
    if (dg != 0.0 && std::isfinite(dg)) {
      next = x - gx / dg;
      if (next < a || next > b || !std::isfinite(next)) {
        if (!bracketed) return {x, false};
        next = 0.5 * (lo + hi);
      }
    } else {
      if (!bracketed) return {x, false};
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) < step_tol) return {next, true};
    x = next;
  }
  return {x, false};
}

std::vector<GridMax> local_maxima(const std::vector<double>& xs,
                                  const std::vector<double>& values,
                                  bool periodic) {
  const int n = static_cast<int>(values.size());
  std::vector<GridMax> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back({0, xs[0], values[0], !periodic, !periodic});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    double prev, next;
    bool at_lo = false, at_hi = false;
    if (periodic) {
      prev = values[(i + n - 1) % n];
      next = values[(i + 1) % n];
    } else {
      if (i == 0) {
        at_lo = true;
        prev = values[0] - 1.0;  // endpoint only competes rightward
      } else {
        prev = values[i - 1];
      }
      if (i == n - 1) {
        at_hi = true;
        next = values[n - 1] - 1.0;
      } else {
        next = values[i + 1];
      }
    }
    const bool peak = values[i] >= prev && values[i] >= next;
    // skip interior plateau continuations
    const bool plateau_cont = i > 0 && values[i] == values[i - 1] &&
                              !out.empty() && out.back().index == i - 1;
    if (peak && !plateau_cont) {
      out.push_back({i, xs[i], values[i], at_lo, at_hi});
    }
  }
  return out;
}

}  // namespace torsion::detail
