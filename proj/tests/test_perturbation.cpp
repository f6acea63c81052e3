#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "support/oracles.hpp"
#include "torsion/perturbation.hpp"

using torsion::Arc;
using torsion::CriticalType;
using torsion::Nondegeneracy;
using torsion::TrigPolynomial;

namespace {

TrigPolynomial faraway_zeta() { return TrigPolynomial({{2, -4.0}, {4, 1.0}}, {}); }
TrigPolynomial monotone_zeta() { return TrigPolynomial({{2, 13.0}, {4, -1.0}}, {}); }

// arccos(sqrt(2/3)) and arccos(sqrt(3/5)), the two closed-form angles of the
// faraway example; digits cross-computed at 30-digit precision.
constexpr double kFailAngle = 0.615479708670387341;
constexpr double kCurvMinAngle = 0.684719203002282914;

constexpr double kHalfPi = std::numbers::pi / 2;

}  // namespace

TEST_SUITE("perturbation") {

TEST_CASE("mode multipliers k and (1 - k), exact through k = 16") {
  for (int k = 0; k <= 16; ++k) {
    const double c = 0.7;
    const auto cos_in = TrigPolynomial::cosine(k, c);
    CHECK(torsion::harmonic_normal_derivative(cos_in).cos_coeff(k) ==
          doctest::Approx(static_cast<double>(k) * c).epsilon(1e-15));
    CHECK(torsion::fail_point_functional(cos_in).cos_coeff(k) ==
          doctest::Approx((1.0 - k) * c).epsilon(1e-15));
    if (k >= 1) {
      const auto sin_in = TrigPolynomial::sine(k, c);
      CHECK(torsion::harmonic_normal_derivative(sin_in).sin_coeff(k) ==
            doctest::Approx(static_cast<double>(k) * c).epsilon(1e-15));
      CHECK(torsion::fail_point_functional(sin_in).sin_coeff(k) ==
            doctest::Approx((1.0 - k) * c).epsilon(1e-15));
    }
  }
}

TEST_CASE("normal derivative examples") {
  CHECK(torsion::harmonic_normal_derivative(TrigPolynomial::constant(3.0)).is_zero());

  const auto d3 = torsion::harmonic_normal_derivative(TrigPolynomial::cosine(3, 1.0));
  CHECK(d3.cos_coeff(3) == 3.0);

  const auto df = torsion::harmonic_normal_derivative(faraway_zeta());
  CHECK(df.cos_coeff(2) == -8.0);
  CHECK(df.cos_coeff(4) == 4.0);
}

TEST_CASE("fail-point functional on the two counterexample profiles") {
  const auto f1 = torsion::fail_point_functional(faraway_zeta());
  CHECK(f1.cos_coeff(2) == 4.0);
  CHECK(f1.cos_coeff(4) == -3.0);

  const auto f2 = torsion::fail_point_functional(monotone_zeta());
  CHECK(f2.cos_coeff(2) == -13.0);
  CHECK(f2.cos_coeff(4) == 3.0);
}

TEST_CASE("translations are annihilated exactly") {
  const TrigPolynomial translation({{1, 0.37}}, {{1, -1.2}});
  CHECK(torsion::fail_point_functional(translation).is_zero());
}

TEST_CASE("mean-zero profiles keep a mean-zero functional") {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto zeta = oracles::random_polynomial(rng, 8, 1.0, false, /*mean_zero=*/true);
    const auto functional = torsion::fail_point_functional(zeta);
    CHECK(functional.cos_coeff(0) == 0.0);
    const double integral =
        oracles::circle_integral([&functional](double t) { return functional(t); });
    CHECK(std::abs(integral) < 1e-12);
  }
}

TEST_CASE("functional is linear, exactly on dyadic input") {
  std::mt19937 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto z1 = oracles::random_dyadic_polynomial(rng, 6);
    const auto z2 = oracles::random_dyadic_polynomial(rng, 6);
    const auto lhs = torsion::fail_point_functional(z1 * 2.0 + z2 * 0.5);
    const auto rhs = torsion::fail_point_functional(z1) * 2.0 +
                     torsion::fail_point_functional(z2) * 0.5;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("harmonic extension: closed form, harmonicity, Poisson integral") {
  const auto zeta = TrigPolynomial::cosine(3, 1.0);
  // closed form r^3 cos(3 theta)
  CHECK(torsion::harmonic_extension(zeta, 0.5, 0.2) ==
        doctest::Approx(0.125 * std::cos(0.6)).epsilon(1e-15));

  std::mt19937 rng(29);
  const auto mixed = oracles::random_polynomial(rng, 6, 1.0);
  const auto field = [&mixed](double x, double y) {
    return torsion::harmonic_extension(mixed, std::hypot(x, y), std::atan2(y, x));
  };
  std::uniform_real_distribution<double> coord(-0.5, 0.5);
  for (int i = 0; i < 25; ++i) {
    const double x = coord(rng), y = coord(rng);
    CHECK(std::abs(oracles::fd_laplacian(field, x, y, 1e-3)) < 1e-6);
  }
  // boundary trace
  for (double theta : {0.0, 1.1, 3.9}) {
    CHECK(torsion::harmonic_extension(mixed, 1.0, theta) ==
          doctest::Approx(mixed(theta)).epsilon(1e-14));
  }
  // independent Poisson-kernel construction at r = 0.5
  for (double theta : {0.4, 2.2, 5.0}) {
    const double via_kernel = oracles::poisson_extension(
        [&mixed](double phi) { return mixed(phi); }, 0.5, theta);
    CHECK(torsion::harmonic_extension(mixed, 0.5, theta) ==
          doctest::Approx(via_kernel).epsilon(1e-12));
  }
}

TEST_CASE("normal derivative matches one-sided differentiation of the extension") {
  std::mt19937 rng(37);
  const auto zeta = oracles::random_polynomial(rng, 5, 1.0);
  const auto dn = torsion::harmonic_normal_derivative(zeta);
  for (double theta : {0.0, 0.9, 2.5, 4.4}) {
    const double fd = oracles::fd_backward_derivative(
        [&zeta, theta](double r) { return torsion::harmonic_extension(zeta, r, theta); },
        1.0, 1e-2);
    CHECK(dn(theta) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("boundary gradient expansion") {
  CHECK(torsion::boundary_gradient_expansion(faraway_zeta(), 0.0, 1.234) ==
        doctest::Approx(0.25));
  // F(0) = 4 - 3 = 1 for the faraway profile
  CHECK(torsion::boundary_gradient_expansion(faraway_zeta(), 0.01, 0.0) ==
        doctest::Approx(0.255).epsilon(1e-15));
  // translations leave the disk value 1/4 at every angle and t
  for (double theta : {0.0, 0.7, 3.0}) {
    CHECK(torsion::boundary_gradient_expansion(TrigPolynomial::cosine(1, 1.0), 0.02,
                                               theta) == doctest::Approx(0.25));
  }
  // general-dimension arithmetic: n = 3 gives 1/9 + (2/9) F t
  CHECK(torsion::boundary_gradient_expansion(faraway_zeta(), 0.01, 0.0, 3) ==
        doctest::Approx(1.0 / 9.0 + 2.0 / 9.0 * 0.01));
  CHECK_THROWS_AS(torsion::boundary_gradient_expansion(faraway_zeta(), 0.01, 0.0, 1),
                  std::invalid_argument);
}

TEST_CASE("radial cutoff is a C^2 plateau step") {
  CHECK(torsion::radial_cutoff(0.0) == 0.0);
  CHECK(torsion::radial_cutoff(0.25) == 0.0);
  CHECK(torsion::radial_cutoff(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(torsion::radial_cutoff(0.75) == 1.0);
  CHECK(torsion::radial_cutoff(1.0) == 1.0);
  // monotone
  double prev = -1.0;
  for (int i = 0; i <= 200; ++i) {
    const double chi = torsion::radial_cutoff(i / 200.0);
    CHECK(chi >= prev);
    prev = chi;
  }
  // C^2 joints: the second derivative vanishes approaching 1/4 and 3/4
  const auto d2 = [](double r) {
    const double h = 1e-5;
    return (torsion::radial_cutoff(r + h) - 2 * torsion::radial_cutoff(r) +
            torsion::radial_cutoff(r - h)) /
           (h * h);
  };
  CHECK(d2(0.25 - 1e-3) == 0.0);
  CHECK(d2(0.75 + 1e-3) == 0.0);
  // inside the ramp the second derivative decays linearly toward the joints
  CHECK(std::abs(d2(0.25 + 1e-3)) < 0.5);
  CHECK(std::abs(d2(0.75 - 1e-3)) < 0.5);
  CHECK(std::abs(d2(0.25 + 1e-4)) < 0.06);
  CHECK(std::abs(d2(0.75 - 1e-4)) < 0.06);
}

TEST_CASE("shape derivative field") {
  std::mt19937 rng(43);
  const auto zeta = oracles::random_polynomial(rng, 6, 1.0);
  const torsion::ShapeDerivativeField v(zeta);

  // vanishes on the unit circle
  for (int i = 0; i < 4096; ++i) {
    CHECK(std::abs(v(1.0, oracles::two_pi * i / 4096)) < 1e-12);
  }
  // harmonic part obeys the mean value property at the origin: chi(0) = 0,
  // so 2 v(0) = (T zeta)(0) = mean boundary value.
  const double boundary_mean =
      oracles::circle_integral([&zeta](double t) { return zeta(t); }) / oracles::two_pi;
  CHECK(2.0 * v(0.0, 0.0) == doctest::Approx(boundary_mean).epsilon(1e-10));

  // closed form for a pure mode-2 profile at r = 1/2: chi(1/2) = 1/2, so
  // v = (1/2)(r^2 - r/2) cos 2t = 0 there.
  const torsion::ShapeDerivativeField v2(TrigPolynomial::cosine(2, 1.0));
  for (double theta : {0.0, 0.8, 2.9}) CHECK(std::abs(v2(0.5, theta)) < 1e-15);
  // and at a radius below the cutoff the transported term drops out entirely
  CHECK(v2(0.2, 0.0) == doctest::Approx(0.5 * 0.04).epsilon(1e-14));

  CHECK_THROWS_AS(torsion::ShapeDerivativeField(zeta, 3), std::invalid_argument);
  CHECK_THROWS_AS(v(1.5, 0.0), std::domain_error);
}

TEST_CASE("predicted fail point of the faraway profile") {
  const auto prediction = torsion::predict_fail_point(faraway_zeta(), Arc{0.0, kHalfPi});
  REQUIRE_FALSE(prediction.degenerate);
  CHECK(prediction.predicted_angle == doctest::Approx(kFailAngle).epsilon(1e-10));
  CHECK(prediction.predicted_value == doctest::Approx(11.0 / 3.0).epsilon(1e-12));
  CHECK(prediction.nondegeneracy == Nondegeneracy::nondegenerate);

  // derivative vanishes at the reported angle
  const auto f = torsion::fail_point_functional(faraway_zeta());
  CHECK(std::abs(f.derivative()(prediction.predicted_angle)) < 1e-10);

  // the maximum appears in the critical-point inventory with type max
  bool listed = false;
  for (const auto& cp : prediction.critical_points) {
    if (std::abs(cp.angle - prediction.predicted_angle) < 1e-9) {
      listed = cp.type == CriticalType::maximum;
    }
  }
  CHECK(listed);

  // brute-force grid oracle
  const auto [oracle_angle, oracle_value] =
      oracles::grid_argmax([&f](double t) { return f(t); }, 0.0, kHalfPi);
  CHECK(prediction.predicted_angle == doctest::Approx(oracle_angle).epsilon(1e-4));
  CHECK(prediction.predicted_value == doctest::Approx(oracle_value).epsilon(1e-9));
}

TEST_CASE("monotone profile peaks at the right arc endpoint") {
  const auto prediction = torsion::predict_fail_point(monotone_zeta(), Arc{0.0, kHalfPi});
  REQUIRE_FALSE(prediction.degenerate);
  CHECK(prediction.predicted_angle == doctest::Approx(kHalfPi).epsilon(1e-10));
  // F' = 2 sin(2t)(13 - 12 cos(2t)) vanishes at pi/2 with F'' = -100: the
  // endpoint is also a nondegenerate critical maximum.
  CHECK(prediction.nondegeneracy == Nondegeneracy::nondegenerate);

  // a truncated arc ending where F still climbs is flagged not-applicable
  const auto cut = torsion::predict_fail_point(monotone_zeta(), Arc{0.0, 1.0});
  CHECK(cut.predicted_angle == doctest::Approx(1.0));
  CHECK(cut.nondegeneracy == Nondegeneracy::not_applicable);
  bool listed_endpoint = false;
  for (const auto& cp : cut.critical_points) {
    if (std::abs(cp.angle - 1.0) < 1e-9) listed_endpoint = cp.endpoint;
  }
  CHECK(listed_endpoint);
}

TEST_CASE("pure mode-2 profile: argmax at pi/2, grid-confirmed") {
  const auto prediction =
      torsion::predict_fail_point(TrigPolynomial::cosine(2, 1.0), Arc{0.0, kHalfPi});
  CHECK(prediction.predicted_angle == doctest::Approx(kHalfPi).epsilon(1e-10));
  const auto f = torsion::fail_point_functional(TrigPolynomial::cosine(2, 1.0));
  const auto [oracle_angle, oracle_value] =
      oracles::grid_argmax([&f](double t) { return f(t); }, 0.0, kHalfPi);
  CHECK(prediction.predicted_angle == doctest::Approx(oracle_angle).epsilon(1e-4));
}

TEST_CASE("degenerate profiles are flagged, not refined") {
  CHECK(torsion::predict_fail_point(TrigPolynomial::constant(2.0), Arc{0.0, kHalfPi})
            .degenerate);
  // translations: F identically zero
  const TrigPolynomial translation({{1, 1.0}}, {{1, 2.0}});
  CHECK(torsion::predict_fail_point(translation).degenerate);
  CHECK_THROWS_AS(torsion::predict_fail_point(faraway_zeta(), Arc{1.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("predicted curvature minimum of the faraway profile") {
  const auto prediction =
      torsion::predict_curvature_min(faraway_zeta(), Arc{0.0, kHalfPi});
  CHECK(prediction.predicted_angle == doctest::Approx(kCurvMinAngle).epsilon(1e-10));
  CHECK(prediction.predicted_value == doctest::Approx(16.2).epsilon(1e-12));
  CHECK(prediction.nondegeneracy == Nondegeneracy::nondegenerate);

  CHECK(torsion::predict_curvature_min(TrigPolynomial::cosine(2, 1.0), Arc{0.0, kHalfPi})
            .predicted_angle == doctest::Approx(kHalfPi));
  CHECK(torsion::predict_curvature_min(TrigPolynomial::constant(1.0)).degenerate);
}

TEST_CASE("prediction is invariant under translations and constant shifts") {
  const Arc arc{0.0, kHalfPi};
  const auto base = torsion::predict_fail_point(faraway_zeta(), arc);

  const auto shifted = faraway_zeta() + TrigPolynomial::cosine(1, 0.8) +
                       TrigPolynomial::sine(1, -0.3);
  const auto same = torsion::predict_fail_point(shifted, arc);
  CHECK(same.predicted_angle == doctest::Approx(base.predicted_angle).epsilon(1e-12));
  CHECK(same.predicted_value == doctest::Approx(base.predicted_value).epsilon(1e-12));

  const auto lifted = torsion::predict_fail_point(
      faraway_zeta() + TrigPolynomial::constant(0.5), arc);
  CHECK(lifted.predicted_angle == doctest::Approx(base.predicted_angle).epsilon(1e-12));
  CHECK(lifted.predicted_value ==
        doctest::Approx(base.predicted_value + 0.5).epsilon(1e-12));
}

TEST_CASE("full-circle inventory of the faraway functional") {
  const auto prediction = torsion::predict_fail_point(faraway_zeta());
  // F' = 8 sin(2t)(3 cos(2t) - 1): zeros at 0, pi/2, pi, 3pi/2 and the four
  // images of the interior maximum
  CHECK(prediction.critical_points.size() == 8);
  int maxima = 0;
  for (const auto& cp : prediction.critical_points) {
    if (cp.type == CriticalType::maximum) ++maxima;
  }
  CHECK(maxima == 4);
  CHECK(prediction.predicted_angle == doctest::Approx(kFailAngle).epsilon(1e-10));
}

}  // TEST_SUITE
