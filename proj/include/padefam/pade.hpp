#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/hypergeometric.hpp"
#include "padefam/rational.hpp"
#include "padefam/series.hpp"

namespace padefam {

/// Coefficients [k/m] of the Pade approximant P/Q to (1 - z)^(-1/p).
struct PadePair {
  unsigned k = 0;
  unsigned m = 0;
  unsigned p = 2;
  SeriesPoly P;  // exact, degree <= k
  SeriesPoly Q;  // exact, degree <= m, Q(0) = 1
};

inline void require_admissible(unsigned k, unsigned m, unsigned p) {
  if (p < 2) throw InvalidParameters("p must be >= 2 (got " + std::to_string(p) + ")");
}

/// P = 2F1(-k, 1/p - m; -k-m; z), Q = 2F1(-m, -1/p - k; -k-m; z).
inline PadePair pade_pair(unsigned k, unsigned m, unsigned p) {
  require_admissible(k, m, p);
  const Rational inv_p(1, static_cast<long>(p));
  const Rational K(static_cast<long>(k));
  const Rational M(static_cast<long>(m));
  const Rational c = -(K + M);
  SeriesPoly P = hyp2f1_poly(-K, inv_p - M, c, k);
  SeriesPoly Q = hyp2f1_poly(-M, -inv_p - K, c, m);
  // Both terminate within their window; re-tag in case (k, m) = (0, 0).
  return PadePair{k, m, p, SeriesPoly::polynomial(P.coeffs()), SeriesPoly::polynomial(Q.coeffs())};
}

/// k! m! (1/p)_{k+1} (1 - 1/p)_m, the factor shared by the error term,
/// the Wronskian-type identity and alpha.
inline Rational pade_error_factor(unsigned k, unsigned m, unsigned p) {
  const Rational inv_p(1, static_cast<long>(p));
  return factorial(k) * factorial(m) * pochhammer(inv_p, k + 1) * pochhammer(Rational(1) - inv_p, m);
}

/// First nonzero Taylor coefficient of f_km(t) = 1 - (1-t)(P/Q)^p:
/// p k! m! (1/p)_{k+1} (1-1/p)_m / ((k+m)! (k+m+1)!).
inline Rational alpha(unsigned k, unsigned m, unsigned p) {
  require_admissible(k, m, p);
  return Rational(static_cast<long>(p)) * pade_error_factor(k, m, p) /
         (factorial(k + m) * factorial(k + m + 1));
}

/// h_km(x) = x N(y) / D(y) with y = x^p, N(y) = P(1-y), D(y) = Q(1-y),
/// scaled to coprime integer coefficients with D(1) > 0.
struct IterationFunction {
  SeriesPoly numerator;
  SeriesPoly denominator;
};

namespace detail {

// Coefficients of s(1 - y) as a polynomial in y.
inline std::vector<Rational> substitute_one_minus(const SeriesPoly& s) {
  const auto& c = s.coeffs();
  std::vector<Rational> out(c.size(), Rational(0));
  // (1 - y)^j = sum_i binom(j, i) (-1)^i y^i
  for (std::size_t j = 0; j < c.size(); ++j) {
    mpz_class binom = 1;
    for (std::size_t i = 0; i <= j; ++i) {
      if (i > 0) {
        binom *= static_cast<unsigned long>(j - i + 1);
        binom /= static_cast<unsigned long>(i);
      }
      const Rational b{mpq_class(binom)};
      out[i] += (i % 2 ? -b : b) * c[j];
    }
  }
  return out;
}

inline mpz_class lcm_den(const std::vector<Rational>& v, mpz_class acc) {
  for (const auto& r : v) mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), r.denominator().get_mpz_t());
  return acc;
}

inline mpz_class gcd_num(const std::vector<Rational>& v, mpz_class acc) {
  for (const auto& r : v) mpz_gcd(acc.get_mpz_t(), acc.get_mpz_t(), r.numerator().get_mpz_t());
  return acc;
}

inline void trim(std::vector<Rational>& v) {
  while (v.size() > 1 && v.back().is_zero()) v.pop_back();
}

}  // namespace detail

/// Normalizes N/D to coprime integer coefficients with D(1) > 0.
inline IterationFunction normalize_rational_function(std::vector<Rational> num, std::vector<Rational> den) {
  detail::trim(num);
  detail::trim(den);
  const mpz_class l = detail::lcm_den(den, detail::lcm_den(num, mpz_class(1)));
  for (auto& r : num) r *= Rational(mpq_class(l));
  for (auto& r : den) r *= Rational(mpq_class(l));
  mpz_class g = detail::gcd_num(den, detail::gcd_num(num, mpz_class(0)));
  Rational at_one = std::accumulate(den.begin(), den.end(), Rational(0));
  if (at_one.is_zero()) throw DivisionByZero("iteration function: D(1) = 0");
  if (at_one.sign() < 0) g = -g;
  const Rational scale{mpq_class(g)};
  for (auto& r : num) r /= scale;
  for (auto& r : den) r /= scale;
  return IterationFunction{SeriesPoly::polynomial(std::move(num)), SeriesPoly::polynomial(std::move(den))};
}

inline IterationFunction iteration_function(const PadePair& pade) {
  return normalize_rational_function(detail::substitute_one_minus(pade.P), detail::substitute_one_minus(pade.Q));
}

/// Renders a polynomial in y = x^p, e.g. "2x^6 + 3x^3 - 1".
inline std::string format_in_xp(const SeriesPoly& poly, unsigned p) {
  std::string out;
  const auto& c = poly.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i].is_zero()) continue;
    const bool neg = c[i].sign() < 0;
    const Rational mag = abs(c[i]);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const std::size_t e = i * p;
    const bool unit = mag == Rational(1);
    if (e == 0 || !unit) out += mag.str();
    if (e > 0) out += e == 1 ? "x" : "x^" + std::to_string(e);
  }
  return out.empty() ? "0" : out;
}

/// "x(x^2 + 3)/(3x^2 + 1)"-style rendering of h_km.
inline std::string format_iteration_function(const IterationFunction& h, unsigned p) {
  const auto paren = [](const std::string& s, bool single) { return single ? s : "(" + s + ")"; };
  const auto terms = [](const SeriesPoly& s) {
    std::size_t n = 0;
    for (const auto& c : s.coeffs()) n += !c.is_zero();
    return n;
  };
  const std::string num = format_in_xp(h.numerator, p);
  const std::string den = format_in_xp(h.denominator, p);
  std::string lhs;
  if (num == "1") lhs = "x";
  else if (terms(h.numerator) == 1 && num.find('x') == std::string::npos) lhs = num + "x";
  else lhs = "x" + paren(num, false);
  if (den == "1") return lhs;
  return lhs + "/" + paren(den, terms(h.denominator) == 1);
}

}  // namespace padefam
