#include "torsion/trig_polynomial.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace torsion {

TrigPolynomial::TrigPolynomial(std::map<int, double> cos_coeffs,
                               std::map<int, double> sin_coeffs)
    : cos_(std::move(cos_coeffs)), sin_(std::move(sin_coeffs)) {
  for (const auto& [k, c] : cos_) {
    if (k < 0) throw std::invalid_argument("cosine mode must be >= 0");
    (void)c;
  }
  for (const auto& [k, s] : sin_) {
    if (k < 1) throw std::invalid_argument("sine mode must be >= 1");
    (void)s;
  }
  prune_and_index();
}

TrigPolynomial TrigPolynomial::constant(double value) {
  TrigPolynomial p;
  p.cos_[0] = value;
  p.prune_and_index();
  return p;
}

TrigPolynomial TrigPolynomial::cosine(int mode, double coeff) {
  if (mode < 0) throw std::invalid_argument("cosine mode must be >= 0");
  TrigPolynomial p;
  p.cos_[mode] = coeff;
  p.prune_and_index();
  return p;
}

TrigPolynomial TrigPolynomial::sine(int mode, double coeff) {
  if (mode < 1) throw std::invalid_argument("sine mode must be >= 1");
  TrigPolynomial p;
  p.sin_[mode] = coeff;
  p.prune_and_index();
  return p;
}

double TrigPolynomial::operator()(double theta) const {
  double value = 0.0;
  for (const auto& [k, c] : cos_) value += c * std::cos(k * theta);
  for (const auto& [k, s] : sin_) value += s * std::sin(k * theta);
  return value;
}

TrigPolynomial TrigPolynomial::derivative() const {
  TrigPolynomial d;
  for (const auto& [k, c] : cos_) {
    if (k >= 1) d.sin_[k] -= k * c;
  }
  for (const auto& [k, s] : sin_) {
    d.cos_[k] += k * s;
  }
  d.prune_and_index();
  return d;
}

TrigPolynomial TrigPolynomial::mode_multiplied(
    const std::function<double(int)>& multiplier) const {
  TrigPolynomial out;
  for (const auto& [k, c] : cos_) out.cos_[k] = multiplier(k) * c;
  for (const auto& [k, s] : sin_) out.sin_[k] = multiplier(k) * s;
  out.prune_and_index();
  return out;
}

double TrigPolynomial::cos_coeff(int mode) const {
  auto it = cos_.find(mode);
  return it == cos_.end() ? 0.0 : it->second;
}

double TrigPolynomial::sin_coeff(int mode) const {
  auto it = sin_.find(mode);
  return it == sin_.end() ? 0.0 : it->second;
}

bool TrigPolynomial::is_constant() const noexcept {
  return sin_.empty() && (cos_.empty() || cos_.rbegin()->first == 0);
}

bool TrigPolynomial::even_modes_only() const noexcept {
  for (const auto& [k, c] : cos_) {
    if (k % 2 != 0) return false;
    (void)c;
  }
  for (const auto& [k, s] : sin_) {
    if (k % 2 != 0) return false;
    (void)s;
  }
  return true;
}

bool TrigPolynomial::even_cosine_modes_only() const noexcept {
  return sin_.empty() && even_modes_only();
}

TrigPolynomial& TrigPolynomial::operator+=(const TrigPolynomial& other) {
  for (const auto& [k, c] : other.cos_) cos_[k] += c;
  for (const auto& [k, s] : other.sin_) sin_[k] += s;
  prune_and_index();
  return *this;
}

TrigPolynomial& TrigPolynomial::operator-=(const TrigPolynomial& other) {
  for (const auto& [k, c] : other.cos_) cos_[k] -= c;
  for (const auto& [k, s] : other.sin_) sin_[k] -= s;
  prune_and_index();
  return *this;
}

TrigPolynomial& TrigPolynomial::operator*=(double scalar) {
  for (auto& [k, c] : cos_) c *= scalar;
  for (auto& [k, s] : sin_) s *= scalar;
  prune_and_index();
  return *this;
}

void TrigPolynomial::prune_and_index() {
  std::erase_if(cos_, [](const auto& kv) { return kv.second == 0.0; });
  std::erase_if(sin_, [](const auto& kv) { return kv.second == 0.0; });
  max_mode_ = 0;
  if (!cos_.empty()) max_mode_ = cos_.rbegin()->first;
  if (!sin_.empty()) max_mode_ = std::max(max_mode_, sin_.rbegin()->first);
}

}  // namespace torsion
