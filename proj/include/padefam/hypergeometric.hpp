#pragma once

#include <cstddef>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/rational.hpp"
#include "padefam/series.hpp"

namespace padefam {

/// Rising factorial q(q+1)...(q+j-1); (q)_0 = 1.
inline Rational pochhammer(const Rational& q, unsigned j) {
  Rational acc(1);
  for (unsigned i = 0; i < j; ++i) {
    acc *= q + Rational(static_cast<long>(i));
    if (acc.is_zero()) break;
  }
  return acc;
}

/// Gauss 2F1(a, b; c; t) through t^N.
///
/// Coefficients are accumulated as the running product of
/// (a+i)(b+i) / ((c+i)(i+1)). The sum stops as soon as a numerator factor
/// vanishes, before the matching denominator is looked at, so terminating
/// series whose (c)_j would hit zero past the termination point come out as
/// the polynomial obtained in the limit. When the series terminates within
/// the window the result is an exact polynomial.
///
/// Throws DivisionByZero when (c+i) = 0 while the numerator is still nonzero.
inline SeriesPoly hyp2f1_poly(const Rational& a, const Rational& b, const Rational& c, std::size_t N) {
  std::vector<Rational> out(N + 1, Rational(0));
  out[0] = Rational(1);
  Rational term(1);
  for (std::size_t j = 1; j <= N + 1; ++j) {
    const Rational i(static_cast<long>(j - 1));
    const Rational num = (a + i) * (b + i);
    if (num.is_zero()) return SeriesPoly::polynomial(std::move(out));
    if (j == N + 1) break;
    const Rational cc = c + i;
    if (cc.is_zero())
      throw DivisionByZero("hyp2f1_poly: (c)_" + std::to_string(j) + " vanishes before the series terminates");
    term *= num / (cc * Rational(static_cast<long>(j)));
    out[j] = term;
  }
  return SeriesPoly::truncated(std::move(out));
}

}  // namespace padefam
