#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/rational.hpp"

namespace padefam {

/// Truncated power series in t over Rational, or an exact polynomial.
///
/// A truncated series of order N knows coefficients t^0..t^N; everything
/// beyond is unknown. An exact polynomial of order N has every coefficient
/// beyond N equal to zero. Arithmetic carries the tightest order that all
/// operands can vouch for, so no result ever reports a coefficient its
/// inputs did not determine.
class SeriesPoly {
 public:
  SeriesPoly() : coeffs_{Rational(0)}, exact_(true) {}

  static SeriesPoly polynomial(std::vector<Rational> coeffs) {
    if (coeffs.empty()) coeffs.emplace_back(0);
    return SeriesPoly(std::move(coeffs), true);
  }
  static SeriesPoly truncated(std::vector<Rational> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("SeriesPoly: truncated series needs order >= 0");
    return SeriesPoly(std::move(coeffs), false);
  }
  static SeriesPoly constant(const Rational& c) { return polynomial({c}); }
  /// c * t^power as an exact polynomial.
  static SeriesPoly monomial(const Rational& c, std::size_t power) {
    std::vector<Rational> v(power + 1, Rational(0));
    v[power] = c;
    return polynomial(std::move(v));
  }

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  bool is_exact_polynomial() const noexcept { return exact_; }
  const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }

  /// Coefficient of t^i. Zero past the end of an exact polynomial; past the
  /// truncation order of a series it is unknown and this throws.
  Rational coeff(std::size_t i) const {
    if (i < coeffs_.size()) return coeffs_[i];
    if (exact_) return Rational(0);
    throw std::out_of_range("SeriesPoly: coefficient beyond truncation order");
  }
  const Rational& operator[](std::size_t i) const { return coeffs_.at(i); }

  /// Highest index with a nonzero coefficient, or nullopt for the zero series.
  std::optional<std::size_t> degree() const {
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      if (!coeffs_[i].is_zero()) return i;
    return std::nullopt;
  }
  /// All known coefficients vanish.
  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.is_zero(); });
  }
  std::optional<std::size_t> first_nonzero() const {
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) return i;
    return std::nullopt;
  }

  /// Truncated series of order n (n may exceed order() only for exact input).
  SeriesPoly truncate(std::size_t n) const {
    if (!exact_ && n > order())
      throw std::invalid_argument("SeriesPoly: cannot extend a truncated series");
    std::vector<Rational> v(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n && i < coeffs_.size(); ++i) v[i] = coeffs_[i];
    return SeriesPoly(std::move(v), false);
  }

  /// Evaluate an exact polynomial at a rational point (Horner).
  Rational evaluate(const Rational& t) const {
    if (!exact_) throw std::logic_error("SeriesPoly: evaluate() needs an exact polynomial");
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
    return acc;
  }

  SeriesPoly derivative() const {
    if (!exact_ && order() == 0)
      throw std::invalid_argument("SeriesPoly: derivative of an order-0 truncated series is unknown");
    if (coeffs_.size() == 1) return exact_ ? constant(Rational(0)) : SeriesPoly();
    std::vector<Rational> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) v[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return SeriesPoly(std::move(v), exact_);
  }

  /// Multiply by t^j.
  SeriesPoly shift(std::size_t j) const {
    std::vector<Rational> v(coeffs_.size() + j, Rational(0));
    std::copy(coeffs_.begin(), coeffs_.end(), v.begin() + static_cast<std::ptrdiff_t>(j));
    return SeriesPoly(std::move(v), exact_);
  }

  SeriesPoly operator-() const {
    SeriesPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend SeriesPoly operator+(const SeriesPoly& a, const SeriesPoly& b) { return combine(a, b, 1); }
  friend SeriesPoly operator-(const SeriesPoly& a, const SeriesPoly& b) { return combine(a, b, -1); }

  friend SeriesPoly operator*(const SeriesPoly& a, const SeriesPoly& b) {
    const bool exact = a.exact_ && b.exact_;
    const std::size_t n = exact ? a.order() + b.order() : known_order(a, b);
    std::vector<Rational> v(n + 1, Rational(0));
    for (std::size_t i = 0; i < a.coeffs_.size() && i <= n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.coeffs_.size() && i + j <= n; ++j)
        v[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return SeriesPoly(std::move(v), exact);
  }
  friend SeriesPoly operator*(const Rational& c, const SeriesPoly& s) {
    SeriesPoly r = s;
    for (auto& x : r.coeffs_) x *= c;
    return r;
  }
  friend SeriesPoly operator*(const SeriesPoly& s, const Rational& c) { return c * s; }

  friend bool operator==(const SeriesPoly& a, const SeriesPoly& b) {
    return a.exact_ == b.exact_ && a.coeffs_ == b.coeffs_;
  }

  friend std::ostream& operator<<(std::ostream& os, const SeriesPoly& s) {
    os << '[';
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) os << (i ? ", " : "") << s.coeffs_[i];
    os << ']';
    if (!s.exact_) os << " + O(t^" << s.order() + 1 << ')';
    return os;
  }

 private:
  SeriesPoly(std::vector<Rational> coeffs, bool exact) : coeffs_(std::move(coeffs)), exact_(exact) {}

  // Order up to which a non-exact combination of a and b is determined.
  static std::size_t known_order(const SeriesPoly& a, const SeriesPoly& b) {
    if (a.exact_) return b.order();
    if (b.exact_) return a.order();
    return std::min(a.order(), b.order());
  }

  static SeriesPoly combine(const SeriesPoly& a, const SeriesPoly& b, int sign) {
    const bool exact = a.exact_ && b.exact_;
    const std::size_t n = exact ? std::max(a.order(), b.order()) : known_order(a, b);
    std::vector<Rational> v(n + 1, Rational(0));
    for (std::size_t i = 0; i <= n; ++i) {
      if (i < a.coeffs_.size()) v[i] += a.coeffs_[i];
      if (i < b.coeffs_.size()) v[i] += sign > 0 ? b.coeffs_[i] : -b.coeffs_[i];
    }
    return SeriesPoly(std::move(v), exact);
  }

  std::vector<Rational> coeffs_;
  bool exact_;
};

/// num / den to order `order` (clamped to what the operands determine).
/// The divisor must be a unit: nonzero constant term.
inline SeriesPoly divide(const SeriesPoly& num, const SeriesPoly& den, std::size_t order) {
  const Rational d0 = den.coeffs().front();
  if (d0.is_zero()) throw DivisionByZero("SeriesPoly: divisor has zero constant term");
  std::size_t n = order;
  if (!num.is_exact_polynomial()) n = std::min(n, num.order());
  if (!den.is_exact_polynomial()) n = std::min(n, den.order());
  std::vector<Rational> q(n + 1, Rational(0));
  for (std::size_t j = 0; j <= n; ++j) {
    Rational acc = num.coeff(j);
    const std::size_t top = std::min(j, den.order());
    for (std::size_t i = 1; i <= top; ++i) acc -= den[i] * q[j - i];
    q[j] = acc / d0;
  }
  return SeriesPoly::truncated(std::move(q));
}

/// s^e by repeated squaring.
inline SeriesPoly pow(SeriesPoly base, unsigned e) {
  SeriesPoly acc = SeriesPoly::constant(Rational(1));
  while (e > 0) {
    if (e & 1u) acc = acc * base;
    e >>= 1u;
    if (e > 0) base = base * base;
  }
  return acc;
}

/// Truncated pow that never computes coefficients past `order`; keeps
/// big-rational growth in check for long exact polynomials.
inline SeriesPoly pow(const SeriesPoly& base, unsigned e, std::size_t order) {
  const SeriesPoly b = base.truncate(base.is_exact_polynomial() ? order : std::min(order, base.order()));
  return pow(b, e);
}

}  // namespace padefam
