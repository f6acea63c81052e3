#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "support/oracles.hpp"
#include "torsion/fail_point.hpp"
#include "torsion/perturbation.hpp"

using torsion::Arc;
using torsion::StarDomain;
using torsion::TrigPolynomial;

namespace {

TrigPolynomial faraway_zeta() { return TrigPolynomial({{2, -4.0}, {4, 1.0}}, {}); }
TrigPolynomial monotone_zeta() { return TrigPolynomial({{2, 13.0}, {4, -1.0}}, {}); }

constexpr double kFailAngle = 0.615479708670387341;  // arccos(sqrt(2/3))
constexpr double kHalfPi = std::numbers::pi / 2;

}  // namespace

TEST_SUITE("fail_point") {

TEST_CASE("search machinery agrees with the analytic prediction on the model") {
  // run the generic extremum search on the first-order profile itself
  const auto functional = torsion::fail_point_functional(faraway_zeta());
  const double t = 0.01;
  const auto model = [&functional, t](double theta) {
    return torsion::expansion_from_functional(functional, t, theta);
  };
  const auto found = torsion::find_profile_max(model, Arc{0.0, kHalfPi});
  const auto predicted = torsion::predict_fail_point(faraway_zeta(), Arc{0.0, kHalfPi});
  REQUIRE(found.angles.size() == 1);
  CHECK(std::abs(found.angles[0] - predicted.predicted_angle) < 1e-9);
  CHECK(found.refinement_converged);
}

TEST_CASE("disk profile is degenerate") {
  const auto solution = torsion::solve(StarDomain(TrigPolynomial(), 0.0));
  const auto result = torsion::find_fail_points(solution);
  CHECK(result.degenerate);
  CHECK(result.angles.empty());
}

TEST_CASE("faraway at t = 0.005: single interior fail point near the prediction") {
  const auto solution = torsion::solve(StarDomain(faraway_zeta(), 0.005));
  const auto result = torsion::find_fail_points(solution, Arc{0.0, kHalfPi});
  REQUIRE(result.angles.size() == 1);
  CHECK_FALSE(result.degenerate);
  CHECK_FALSE(result.endpoint[0]);
  CHECK(result.refinement_converged);
  // empirical Lipschitz bound: within 5 t of the first-order angle
  CHECK(std::abs(result.angles[0] - kFailAngle) <= 5.0 * 0.005);
  CHECK(result.max_value == doctest::Approx(solution.boundary_grad_sq(result.angles[0]))
                                .epsilon(1e-12));
  // profile rows attached and consistent with the search window
  CHECK(result.profile.rows.size() >= 1024);
  CHECK(result.profile.rows.front().theta == doctest::Approx(0.0));
}

TEST_CASE("monotone at t = 0.005: endpoint maximum flagged") {
  const auto solution = torsion::solve(StarDomain(monotone_zeta(), 0.005));
  const auto result = torsion::find_fail_points(solution, Arc{0.0, kHalfPi});
  REQUIRE(result.angles.size() == 1);
  CHECK(result.angles[0] == doctest::Approx(kHalfPi).epsilon(1e-7));
  CHECK(result.endpoint[0]);
}

TEST_CASE("full-circle fail set is closed under the symmetries of zeta") {
  const auto solution = torsion::solve(StarDomain(faraway_zeta(), 0.005));
  const auto result = torsion::find_fail_points(solution);
  REQUIRE(result.angles.size() == 4);  // theta*, pi - theta*, pi + theta*, 2pi - theta*
  for (double a : result.angles) {
    for (double image :
         {torsion::wrap_angle(-a), torsion::wrap_angle(a + std::numbers::pi)}) {
      double nearest = 1e9;
      for (double b : result.angles) {
        nearest = std::min({nearest, std::abs(b - image),
                            oracles::two_pi - std::abs(b - image)});
      }
      CHECK(nearest < 1e-6);
    }
  }
  // reflections tie the four angles into a single symmetry orbit
  for (int g : result.symmetry_group) CHECK(g == result.symmetry_group[0]);
}

TEST_CASE("monotonicity: gradient increases on the quarter arc, curvature does not") {
  const auto solution = torsion::solve(StarDomain(monotone_zeta(), 0.005));
  const auto report = torsion::monotonicity_check(solution, Arc{0.0, kHalfPi}, 512);
  CHECK(report.monotone);
  CHECK(report.increasing);
  CHECK(report.sign_changes.empty());

  // the faraway profile has an interior maximum: not monotone
  const auto faraway_sol = torsion::solve(StarDomain(faraway_zeta(), 0.005));
  const auto faraway_rep = torsion::monotonicity_check(faraway_sol, Arc{0.0, kHalfPi}, 512);
  CHECK_FALSE(faraway_rep.monotone);
  CHECK_FALSE(faraway_rep.sign_changes.empty());

  // curvature counterpart for the monotone profile: kappa is not monotone
  const StarDomain domain(monotone_zeta(), 0.005);
  const auto kappa_rep = torsion::monotonicity_report(
      [&domain](double theta) { return torsion::curvature(domain, theta); },
      Arc{0.0, kHalfPi}, 512);
  CHECK_FALSE(kappa_rep.monotone);
}

TEST_CASE("monotonicity check validates input") {
  const auto solution = torsion::solve(StarDomain(monotone_zeta(), 0.005));
  CHECK_THROWS_AS(torsion::monotonicity_check(solution, Arc{0.0, kHalfPi}, 128),
                  std::invalid_argument);
}

TEST_CASE("convergence sweep tracks the predicted angle at rate O(t)") {
  const auto table = torsion::convergence_sweep(faraway_zeta(), {0.02, 0.01, 0.005},
                                                Arc{0.0, kHalfPi});
  REQUIRE(table.rows.size() == 3);
  CHECK(table.predicted_angle == doctest::Approx(kFailAngle).epsilon(1e-10));
  for (const auto& row : table.rows) {
    CHECK(row.ok);
    CHECK(row.abs_error >= 0.0);
    CHECK(row.fail_angle_predicted == doctest::Approx(kFailAngle).epsilon(1e-10));
  }
  CHECK(table.rows[1].abs_error < table.rows[0].abs_error);
  CHECK(table.rows[2].abs_error < table.rows[1].abs_error);
  CHECK(table.rows[2].abs_error <= 0.025);
  // empirical Lipschitz bound |numeric - predicted| <= 5 t at t <= 0.01
  CHECK(table.rows[1].abs_error <= 5.0 * 0.01);
  CHECK(table.rows[2].abs_error <= 5.0 * 0.005);
  CHECK(std::isnan(table.rows[0].error_ratio));
  for (size_t i = 1; i < table.rows.size(); ++i) {
    CHECK(table.rows[i].error_ratio ==
          doctest::Approx(table.rows[i - 1].abs_error / table.rows[i].abs_error));
  }
}

TEST_CASE("sweep tracks a combined two-mode profile to its functional argmax") {
  // zeta = cos(2t) + 0.1 cos(4t): F = -cos(2t) - 0.3 cos(4t) peaks strictly
  // inside (0, pi/2); the numeric fail angle must home in on it.
  const TrigPolynomial zeta({{2, 1.0}, {4, 0.1}}, {});
  const auto predicted = torsion::predict_fail_point(zeta, Arc{0.0, kHalfPi});
  REQUIRE_FALSE(predicted.degenerate);
  CHECK(predicted.predicted_angle > 1.0);
  CHECK(predicted.predicted_angle < kHalfPi - 0.2);

  const auto table =
      torsion::convergence_sweep(zeta, {0.02, 0.01, 0.005}, Arc{0.0, kHalfPi});
  for (const auto& row : table.rows) {
    CHECK(row.ok);
    // empirical Lipschitz bound from the harness contract
    CHECK(row.abs_error <= 5.0 * row.t);
  }
  CHECK(table.rows[2].abs_error < table.rows[0].abs_error);
}

TEST_CASE("sweep rows survive individual solver failures") {
  // t = 0.3 keeps the domain barely star-shaped but far outside the
  // resolvable regime at the default degree
  const auto table =
      torsion::convergence_sweep(faraway_zeta(), {0.3, 0.01}, Arc{0.0, kHalfPi});
  REQUIRE(table.rows.size() == 2);
  CHECK_FALSE(table.rows[0].ok);
  CHECK_FALSE(table.rows[0].message.empty());
  CHECK(table.rows[1].ok);
  CHECK(std::isnan(table.rows[1].error_ratio));
}

TEST_CASE("sweep input validation") {
  CHECK_THROWS_AS(torsion::convergence_sweep(faraway_zeta(), {}, Arc{0.0, kHalfPi}),
                  std::invalid_argument);
  CHECK_THROWS_AS(torsion::convergence_sweep(faraway_zeta(), {0.01, 0.02}, Arc{0.0, kHalfPi}),
                  std::invalid_argument);
  CHECK_THROWS_AS(torsion::convergence_sweep(faraway_zeta(), {0.01, -0.005}, Arc{0.0, kHalfPi}),
                  std::invalid_argument);
  // translations have a degenerate prediction
  CHECK_THROWS_AS(torsion::convergence_sweep(TrigPolynomial::cosine(1, 1.0), {0.01},
                                             Arc{0.0, kHalfPi}),
                  std::invalid_argument);
}

TEST_CASE("distance report: faraway fail points sit far from the contacts") {
  const StarDomain domain(faraway_zeta(), 0.005);
  const auto solution = torsion::solve(domain);
  const auto result = torsion::find_fail_points(solution);
  const auto report = torsion::distance_report(result, domain);
  REQUIRE_FALSE(report.degenerate);
  CHECK(report.contact_angles.size() == 2);
  CHECK(report.distance > 0.3);
  CHECK(report.diameter > 2.0);
  CHECK(report.ratio > 0.0);
  CHECK(report.ratio == doctest::Approx(report.distance / report.diameter));
  // the polar gap is roughly 35 degrees, so the chord is about 2 sin(0.31)
  CHECK(report.distance == doctest::Approx(2.0 * std::sin(kFailAngle / 2)).epsilon(0.1));
}

TEST_CASE("distance report: mode-2 fail points coincide with the contacts") {
  const StarDomain domain(TrigPolynomial::cosine(2, 1.0), 0.005);
  const auto solution = torsion::solve(domain);
  const auto result = torsion::find_fail_points(solution);
  const auto report = torsion::distance_report(result, domain);
  REQUIRE_FALSE(report.degenerate);
  CHECK(report.distance < 1e-4);
  CHECK(report.ratio < 1e-4);
}

TEST_CASE("distance report: disk is degenerate") {
  const StarDomain disk(TrigPolynomial(), 0.0);
  const auto solution = torsion::solve(disk);
  const auto result = torsion::find_fail_points(solution);
  const auto report = torsion::distance_report(result, disk);
  CHECK(report.degenerate);
}

TEST_CASE("distance report inherits the central-symmetry requirement") {
  const StarDomain asym(TrigPolynomial::cosine(1, 0.4), 0.1);
  torsion::FailPointResult fake;
  fake.angles = {0.0};
  CHECK_THROWS_AS(torsion::distance_report(fake, asym), std::invalid_argument);
}

}  // TEST_SUITE
