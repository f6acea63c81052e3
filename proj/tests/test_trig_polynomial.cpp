#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "support/oracles.hpp"
#include "torsion/trig_polynomial.hpp"

using torsion::TrigPolynomial;

TEST_SUITE("trig_polynomial") {

TEST_CASE("single-mode evaluation") {
  const auto p = TrigPolynomial::cosine(1, 1.0);
  CHECK(p(0.0) == doctest::Approx(1.0));
  CHECK(p(std::numbers::pi) == doctest::Approx(-1.0));

  const auto q = TrigPolynomial::sine(3, 2.0);
  CHECK(q(std::numbers::pi / 6.0) == doctest::Approx(2.0));  // sin(pi/2)
}

TEST_CASE("zero polynomial evaluates to zero everywhere") {
  const TrigPolynomial zero;
  CHECK(zero.is_zero());
  CHECK(zero.max_mode() == 0);
  for (double theta : {0.0, 0.3, 2.0, 6.1}) CHECK(zero(theta) == 0.0);
}

TEST_CASE("2pi periodicity to machine precision") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = oracles::random_polynomial(rng, 8, 2.0);
    std::uniform_real_distribution<double> angle(-10.0, 10.0);
    for (int i = 0; i < 50; ++i) {
      const double theta = angle(rng);
      CHECK(p(theta) == doctest::Approx(p(theta + oracles::two_pi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("derivative keeps max_mode and matches finite differences") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = oracles::random_polynomial(rng, 6, 1.5);
    const auto d = p.derivative();
    CHECK(d.max_mode() == p.max_mode());

    std::uniform_real_distribution<double> angle(0.0, oracles::two_pi);
    for (int i = 0; i < 20; ++i) {
      const double theta = angle(rng);
      const double h = 1e-5;
      const double fd = (p(theta + h) - p(theta - h)) / (2.0 * h);
      CHECK(d(theta) == doctest::Approx(fd).epsilon(1e-7));
    }
  }
}

TEST_CASE("derivative of cos(3 theta)") {
  const auto d = TrigPolynomial::cosine(3, 1.0).derivative();
  CHECK(d.cos_coeffs().empty());
  CHECK(d.sin_coeff(3) == -3.0);
  CHECK(d.max_mode() == 3);
}

TEST_CASE("constant derivative vanishes") {
  CHECK(TrigPolynomial::constant(4.2).derivative().is_zero());
}

TEST_CASE("arithmetic is exact on dyadic coefficients") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracles::random_dyadic_polynomial(rng, 5);
    const auto b = oracles::random_dyadic_polynomial(rng, 5);
    const auto sum = a + b;
    for (int k = 0; k <= 5; ++k) {
      CHECK(sum.cos_coeff(k) == a.cos_coeff(k) + b.cos_coeff(k));
      if (k >= 1) CHECK(sum.sin_coeff(k) == a.sin_coeff(k) + b.sin_coeff(k));
    }
    const auto scaled = a * 2.0;
    for (int k = 0; k <= 5; ++k) CHECK(scaled.cos_coeff(k) == 2.0 * a.cos_coeff(k));
  }
}

TEST_CASE("mode_multiplied applies the multiplier per mode") {
  const auto p = TrigPolynomial({{0, 1.0}, {2, -4.0}}, {{3, 2.0}});
  const auto q = p.mode_multiplied([](int k) { return static_cast<double>(k * k); });
  CHECK(q.cos_coeff(0) == 0.0);
  CHECK(q.cos_coeff(2) == -16.0);
  CHECK(q.sin_coeff(3) == 18.0);
}

TEST_CASE("exact zeros are pruned so classification predicates work") {
  const TrigPolynomial p({{0, 0.5}, {4, 0.0}}, {{2, 0.0}});
  CHECK(p.is_constant());
  CHECK(p.max_mode() == 0);
  CHECK(p.even_modes_only());
  CHECK(p.cosine_only());

  const TrigPolynomial q({{2, 1.0}}, {{4, 0.25}});
  CHECK(q.even_modes_only());
  CHECK_FALSE(q.cosine_only());
  CHECK_FALSE(q.even_cosine_modes_only());
  CHECK(TrigPolynomial({{0, 1.0}, {2, 3.0}}, {}).even_cosine_modes_only());
  CHECK_FALSE(TrigPolynomial({{1, 1.0}}, {}).even_modes_only());
}

TEST_CASE("invalid modes are rejected") {
  CHECK_THROWS_AS(TrigPolynomial({{-1, 1.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(TrigPolynomial({}, {{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(TrigPolynomial::sine(0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TrigPolynomial::cosine(-2, 1.0), std::invalid_argument);
}

TEST_CASE("mean is the mode-0 coefficient and matches quadrature") {
  std::mt19937 rng(31);
  const auto p = oracles::random_polynomial(rng, 8, 1.0);
  const double quad = oracles::circle_integral([&p](double t) { return p(t); }) /
                      oracles::two_pi;
  CHECK(p.mean() == doctest::Approx(quad).epsilon(1e-13));
}

}  // TEST_SUITE
