#pragma once

// Extended-precision replay of a scalar orbit, used to settle bound checks
// that double rounding cannot decide.

#include <gmpxx.h>

#include <complex>
#include <cstddef>

#include "padefam/pade.hpp"

namespace padefam {

constexpr mp_bitcnt_t kPreciseBits = 256;

struct PreciseComplex {
  mpf_class re{0, kPreciseBits};
  mpf_class im{0, kPreciseBits};

  PreciseComplex() = default;
  PreciseComplex(const mpf_class& r, const mpf_class& i) : re(r, kPreciseBits), im(i, kPreciseBits) {}
  explicit PreciseComplex(std::complex<double> z) : re(z.real(), kPreciseBits), im(z.imag(), kPreciseBits) {}

  friend PreciseComplex operator+(const PreciseComplex& a, const PreciseComplex& b) {
    return {mpf_class(a.re + b.re), mpf_class(a.im + b.im)};
  }
  friend PreciseComplex operator-(const PreciseComplex& a, const PreciseComplex& b) {
    return {mpf_class(a.re - b.re), mpf_class(a.im - b.im)};
  }
  friend PreciseComplex operator*(const PreciseComplex& a, const PreciseComplex& b) {
    return {mpf_class(a.re * b.re - a.im * b.im), mpf_class(a.re * b.im + a.im * b.re)};
  }
  friend PreciseComplex operator/(const PreciseComplex& a, const PreciseComplex& b) {
    const mpf_class d(b.re * b.re + b.im * b.im, kPreciseBits);
    return {mpf_class((a.re * b.re + a.im * b.im) / d), mpf_class((a.im * b.re - a.re * b.im) / d)};
  }
  mpf_class abs() const { return mpf_class(sqrt(mpf_class(re * re + im * im, kPreciseBits)), kPreciseBits); }
};

inline mpf_class to_mpf(const Rational& r) { return mpf_class(r.raw(), kPreciseBits); }

inline PreciseComplex precise_pow(PreciseComplex x, unsigned e) {
  PreciseComplex acc(mpf_class(1), mpf_class(0));
  for (; e; e >>= 1) {
    if (e & 1u) acc = acc * x;
    x = x * x;
  }
  return acc;
}

/// Residual and both bounds at step l of the exact orbit from x0.
struct PreciseStep {
  mpf_class residual{0, kPreciseBits};
  mpf_class conjecture{0, kPreciseBits};
  mpf_class strengthened{0, kPreciseBits};
};

inline PreciseStep precise_step(std::complex<double> x0, const PadePair& pade, std::size_t l) {
  const PreciseComplex one(mpf_class(1), mpf_class(0));
  const auto horner = [](const SeriesPoly& c, const PreciseComplex& t) {
    PreciseComplex acc;
    for (std::size_t i = c.coeffs().size(); i-- > 0;) acc = acc * t + PreciseComplex(to_mpf(c.coeffs()[i]), mpf_class(0));
    return acc;
  };
  PreciseComplex x(x0);
  const mpf_class r0 = (one - precise_pow(x, pade.p)).abs();
  for (std::size_t i = 0; i < l; ++i) {
    const PreciseComplex t = one - precise_pow(x, pade.p);
    x = x * (horner(pade.P, t) / horner(pade.Q, t));
  }
  PreciseStep s;
  s.residual = (one - precise_pow(x, pade.p)).abs();

  const unsigned long q = pade.k + pade.m + 1;
  mpz_class ql = 1;
  for (std::size_t i = 0; i < l; ++i) ql *= q;
  const mpz_class geo = q == 1 ? mpz_class(static_cast<unsigned long>(l)) : mpz_class((ql - 1) / (q - 1));
  const mpf_class a = to_mpf(alpha(pade.k, pade.m, pade.p));
  const mpf_class g((r0 + a) / (1 + a * r0), kPreciseBits);
  // Past 2^62 the bounds underflow any representable residual; leave them 0.
  if (!ql.fits_ulong_p() || ql > (mpz_class(1) << 62)) return s;
  mpf_pow_ui(s.conjecture.get_mpf_t(), r0.get_mpf_t(), ql.get_ui());
  mpf_class gp(0, kPreciseBits);
  mpf_pow_ui(gp.get_mpf_t(), g.get_mpf_t(), geo.get_ui());
  s.strengthened = s.conjecture * gp;
  return s;
}

}  // namespace padefam
