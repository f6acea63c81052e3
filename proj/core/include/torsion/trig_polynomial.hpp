#pragma once

#include <functional>
#include <map>

namespace torsion {

/// Finite Fourier series on the circle,
///   f(theta) = sum_{k>=0} c_k cos(k theta) + sum_{k>=1} s_k sin(k theta).
///
/// Immutable after construction; all operations return new polynomials.
/// Coefficients that are exactly zero are not stored.
class TrigPolynomial {
public:
  TrigPolynomial() = default;
  TrigPolynomial(std::map<int, double> cos_coeffs, std::map<int, double> sin_coeffs);

  static TrigPolynomial constant(double value);
  static TrigPolynomial cosine(int mode, double coeff);
  static TrigPolynomial sine(int mode, double coeff);

  /// Evaluate at angle theta (any real, interpreted mod 2*pi).
  double operator()(double theta) const;

  /// Termwise derivative. Shares max_mode with *this.
  TrigPolynomial derivative() const;

  /// Applies coeff(k) -> multiplier(k) * coeff(k) to every stored mode,
  /// cos and sin alike. Mode 0 uses multiplier(0).
  TrigPolynomial mode_multiplied(const std::function<double(int)>& multiplier) const;

  int max_mode() const noexcept { return max_mode_; }
  double cos_coeff(int mode) const;
  double sin_coeff(int mode) const;
  const std::map<int, double>& cos_coeffs() const noexcept { return cos_; }
  const std::map<int, double>& sin_coeffs() const noexcept { return sin_; }

  /// Mean value over the circle, (1/2pi) * integral = c_0.
  double mean() const { return cos_coeff(0); }

  bool is_zero() const noexcept { return cos_.empty() && sin_.empty(); }
  /// True when no mode k >= 1 is present.
  bool is_constant() const noexcept;
  bool cosine_only() const noexcept { return sin_.empty(); }
  /// All stored modes even: 1 + t*f describes a centrally symmetric domain.
  bool even_modes_only() const noexcept;
  /// Even cosine modes only (plus a constant): both coordinate axes are
  /// symmetry axes of 1 + t*f.
  bool even_cosine_modes_only() const noexcept;

  TrigPolynomial& operator+=(const TrigPolynomial& other);
  TrigPolynomial& operator-=(const TrigPolynomial& other);
  TrigPolynomial& operator*=(double scalar);

  friend TrigPolynomial operator+(TrigPolynomial a, const TrigPolynomial& b) { return a += b; }
  friend TrigPolynomial operator-(TrigPolynomial a, const TrigPolynomial& b) { return a -= b; }
  friend TrigPolynomial operator*(TrigPolynomial a, double s) { return a *= s; }
  friend TrigPolynomial operator*(double s, TrigPolynomial a) { return a *= s; }

  bool operator==(const TrigPolynomial& other) const = default;

private:
  std::map<int, double> cos_;  // mode k >= 0
  std::map<int, double> sin_;  // mode k >= 1
  int max_mode_ = 0;

  void prune_and_index();
};

}  // namespace torsion
