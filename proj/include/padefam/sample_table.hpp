#pragma once

#include <optional>
#include <vector>

#include "padefam/pade.hpp"
#include "padefam/rational.hpp"

namespace padefam {

/// Closed forms of h_km for k, m <= 2 (except [0/0]'s trivial cousins),
/// written as x N(y)/D(y) with y = x^p and coefficients as functions of p.
/// Returned normalized the same way as iteration_function() so the two
/// can be compared coefficient by coefficient.
inline std::optional<IterationFunction> sample_iteration_function(unsigned k, unsigned m, unsigned p) {
  const Rational P(static_cast<long>(p));
  const Rational one(1);
  const Rational two(2);
  using V = std::vector<Rational>;
  V num;
  V den;
  if (k == 0 && m == 0) {
    num = {one};
    den = {one};
  } else if (k == 0 && m == 1) {
    num = {P};
    den = {P - one, one};
  } else if (k == 1 && m == 0) {
    num = {(one + P) / P, -one / P};
    den = {one};
  } else if (k == 1 && m == 1) {
    num = {P + one, P - one};
    den = {P - one, P + one};
  } else if (k == 0 && m == 2) {
    num = {two * P * P};
    den = {two * P * P - Rational(3) * P + one, Rational(4) * P - two, one - P};
  } else if (k == 1 && m == 2) {
    num = {two * P * (P + one), two * P * (two * P - one)};
    den = {two * P * P - Rational(3) * P + one, Rational(4) * P * P + two * P - two, P + one};
  } else if (k == 2 && m == 0) {
    const Rational s = one / (two * P * P);
    num = {s * (two * P * P + Rational(3) * P + one), -s * (Rational(4) * P + two), s * (P + one)};
    den = {one};
  } else if (k == 2 && m == 1) {
    const Rational s = one / (two * P);
    num = {s * (two * P * P + Rational(3) * P + one), s * (Rational(4) * P * P - two * P - two), s * (one - P)};
    den = {P - one, two * P + one};
  } else if (k == 2 && m == 2) {
    num = {two * P * P + Rational(3) * P + one, Rational(8) * P * P - two, two * P * P - Rational(3) * P + one};
    den = {two * P * P - Rational(3) * P + one, Rational(8) * P * P - two, two * P * P + Rational(3) * P + one};
  } else {
    return std::nullopt;
  }
  return normalize_rational_function(std::move(num), std::move(den));
}

}  // namespace padefam
