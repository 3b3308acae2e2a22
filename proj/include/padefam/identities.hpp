#pragma once

// Exact-arithmetic residuals for the Pade family of (1 - t)^(-1/p).
// Every residual here is a SeriesPoly that must come out identically zero;
// callers decide what to do with a nonzero one.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/hypergeometric.hpp"
#include "padefam/pade.hpp"
#include "padefam/rational.hpp"
#include "padefam/series.hpp"

namespace padefam {

/// (1 - t)^(-1/p) = sum_j (1/p)_j / j! t^j, through t^N.
inline SeriesPoly binomial_series(unsigned p, std::size_t N) {
  const Rational inv_p(1, static_cast<long>(p));
  std::vector<Rational> c(N + 1);
  c[0] = Rational(1);
  for (std::size_t j = 1; j <= N; ++j)
    c[j] = c[j - 1] * (inv_p + Rational(static_cast<long>(j - 1))) / Rational(static_cast<long>(j));
  return SeriesPoly::truncated(std::move(c));
}

/// R_km = 2F1(m+1, k+1/p+1; m+k+2; t) through t^N.
inline SeriesPoly r_series(unsigned k, unsigned m, unsigned p, std::size_t N) {
  const Rational inv_p(1, static_cast<long>(p));
  return hyp2f1_poly(Rational(static_cast<long>(m + 1)), Rational(static_cast<long>(k + 1)) + inv_p,
                     Rational(static_cast<long>(m + k + 2)), N);
}

/// Taylor series of P_km / Q_km through t^N.
inline SeriesPoly ratio_series(const PadePair& pade, std::size_t N) { return divide(pade.P, pade.Q, N); }

namespace detail {
inline void require_order(std::size_t N, std::size_t need, const char* what) {
  if (N < need)
    throw InvalidParameters(std::string(what) + ": truncation order must be >= " + std::to_string(need));
}
}  // namespace detail

struct FSeriesReport {
  unsigned k = 0;
  unsigned m = 0;
  unsigned p = 2;
  std::vector<Rational> coeffs;  // c_{km,0} .. c_{km,N}
  Rational alpha;
  std::optional<std::size_t> first_nonzero_index;
};

/// f_km(t) = 1 - (1 - t) (P/Q)^p through t^N.
inline FSeriesReport f_series(unsigned k, unsigned m, unsigned p, std::size_t N) {
  require_admissible(k, m, p);
  detail::require_order(N, k + m + 1, "f_series");
  const PadePair pade = pade_pair(k, m, p);
  const SeriesPoly ratio = ratio_series(pade, N);
  const SeriesPoly f = SeriesPoly::constant(Rational(1)) -
                       SeriesPoly::polynomial({Rational(1), Rational(-1)}) * pow(ratio, p);
  FSeriesReport rep{k, m, p, f.coeffs(), alpha(k, m, p), f.first_nonzero()};
  return rep;
}

/// P/Q - (1-t)^(-1/p) + k!m!(1/p)_{k+1}(1-1/p)_m / ((k+m)!(k+m+1)!) t^{k+m+1} R/Q.
inline SeriesPoly lemma_error_residual(unsigned k, unsigned m, unsigned p, std::size_t N) {
  require_admissible(k, m, p);
  detail::require_order(N, k + m + 1, "lemma_error_residual");
  const PadePair pade = pade_pair(k, m, p);
  const Rational K = pade_error_factor(k, m, p) / (factorial(k + m) * factorial(k + m + 1));
  const std::size_t lead = k + m + 1;
  const SeriesPoly tail = divide(r_series(k, m, p, N - lead), pade.Q, N - lead).shift(lead);
  return ratio_series(pade, N) - binomial_series(p, N) + K * tail;
}

/// (1-t)^(-1/p) Q - P through t^N; vanishes through t^{k+m} for a Pade pair.
inline SeriesPoly pade_order_residual(unsigned k, unsigned m, unsigned p, std::size_t N) {
  const PadePair pade = pade_pair(k, m, p);
  return binomial_series(p, N) * pade.Q - pade.P;
}

/// Left side minus right side of
///   (t(a+b-1) - c + 1) F G + t(1-t)(1-a)(1-b)/(2-c) F H
///     - t(1-t) ab/c K G = 1 - c,
/// with F = 2F1(a,b;c), G = 2F1(1-a,1-b;2-c), H = 2F1(2-a,2-b;3-c),
/// K = 2F1(a+1,b+1;c+1). A term whose scalar prefactor has a vanishing
/// numerator is dropped before its 2F1 factor is formed.
inline SeriesPoly hypergeometric_identity_residual(const Rational& a, const Rational& b, const Rational& c,
                                                   std::size_t N) {
  const Rational one(1);
  const Rational two(2);
  const SeriesPoly F = hyp2f1_poly(a, b, c, N);
  const SeriesPoly G = hyp2f1_poly(one - a, one - b, two - c, N);
  const SeriesPoly t_one_minus_t = SeriesPoly::polynomial({Rational(0), one, Rational(-1)});

  SeriesPoly lhs = SeriesPoly::polynomial({one - c, a + b - one}) * F * G;

  const Rational num2 = (one - a) * (one - b);
  if (!num2.is_zero()) {
    if ((two - c).is_zero()) throw DivisionByZero("hypergeometric identity: 2 - c = 0");
    const SeriesPoly H = hyp2f1_poly(two - a, two - b, Rational(3) - c, N);
    lhs = lhs + (num2 / (two - c)) * t_one_minus_t * F * H;
  }
  const Rational num3 = a * b;
  if (!num3.is_zero()) {
    if (c.is_zero()) throw DivisionByZero("hypergeometric identity: c = 0");
    const SeriesPoly Kser = hyp2f1_poly(a + one, b + one, c + one, N);
    lhs = lhs - (num3 / c) * t_one_minus_t * Kser * G;
  }
  return lhs - SeriesPoly::constant(one - c);
}

/// The identity specialised to a = -m, b = -k - 1/p, c = -k - m.
inline SeriesPoly hypergeometric_identity_residual(unsigned k, unsigned m, unsigned p, std::size_t N) {
  const Rational K(static_cast<long>(k));
  const Rational M(static_cast<long>(m));
  return hypergeometric_identity_residual(-M, -K - Rational(1, static_cast<long>(p)), -K - M, N);
}

/// p k! m! (1/p)_{k+1} (1-1/p)_m / ((k+m)!)^2.
inline Rational polynomial_identity_constant(unsigned k, unsigned m, unsigned p) {
  const Rational f = factorial(k + m);
  return Rational(static_cast<long>(p)) * pade_error_factor(k, m, p) / (f * f);
}

/// P Q + p(t-1)(P'Q - P Q') - C t^{k+m}, in exact polynomial arithmetic.
inline SeriesPoly polynomial_identity_residual(unsigned k, unsigned m, unsigned p) {
  const PadePair pade = pade_pair(k, m, p);
  const SeriesPoly& P = pade.P;
  const SeriesPoly& Q = pade.Q;
  const Rational pr(static_cast<long>(p));
  const SeriesPoly t_minus_one = SeriesPoly::polynomial({Rational(-1), Rational(1)});
  return P * Q + pr * t_minus_one * (P.derivative() * Q - P * Q.derivative()) -
         SeriesPoly::monomial(polynomial_identity_constant(k, m, p), k + m);
}

/// (p(k+m+1)(1-t) - t) Q R + p t(1-t)(Q R' - Q' R) - p(k+m+1) through t^N.
inline SeriesPoly wronskian_identity_residual(unsigned k, unsigned m, unsigned p, std::size_t N) {
  require_admissible(k, m, p);
  detail::require_order(N, k + m + 2, "wronskian_identity_residual");
  const PadePair pade = pade_pair(k, m, p);
  const SeriesPoly& Q = pade.Q;
  const SeriesPoly R = r_series(k, m, p, N + 1);
  const Rational pr(static_cast<long>(p));
  const Rational s = pr * Rational(static_cast<long>(k + m + 1));
  const SeriesPoly lin = SeriesPoly::polynomial({s, -s - Rational(1)});
  const SeriesPoly t_one_minus_t = SeriesPoly::polynomial({Rational(0), Rational(1), Rational(-1)});
  const SeriesPoly out = lin * Q * R + pr * t_one_minus_t * (Q * R.derivative() - Q.derivative() * R) -
                         SeriesPoly::constant(s);
  return out.truncate(N);
}

}  // namespace padefam
