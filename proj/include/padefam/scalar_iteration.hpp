#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/pade.hpp"
#include "padefam/precise_orbit.hpp"

namespace padefam {

using cdouble = std::complex<double>;

/// x^e by binary powering; `one` is the multiplicative identity.
/// Shared by the scalar and matrix iterations so that a 1x1 matrix run
/// performs the same floating-point operations as the scalar run.
template <class T, class Mul>
T power_by_squaring(T base, unsigned e, T one, Mul mul) {
  T acc = std::move(one);
  bool first = true;
  while (e > 0) {
    if (e & 1u) {
      acc = first ? base : mul(acc, base);
      first = false;
    }
    e >>= 1u;
    if (e > 0) base = mul(base, base);
  }
  return acc;
}

inline cdouble ipow(cdouble x, unsigned p) {
  return power_by_squaring(x, p, cdouble(1.0), [](cdouble a, cdouble b) { return a * b; });
}

struct IterConfig {
  unsigned k = 0;
  unsigned m = 1;
  unsigned p = 2;
  std::size_t max_iter = 64;
  double tol = 1e-14;  // on |1 - x^p|

  void validate() const {
    require_admissible(k, m, p);
    if (!(tol > 0.0)) throw InvalidParameters("tol must be > 0");
    if (max_iter < 1) throw InvalidParameters("max_iter must be >= 1");
  }
  unsigned order() const noexcept { return k + m + 1; }
};

/// Double-precision view of a Pade pair ready for Horner evaluation.
struct IterationCoefficients {
  unsigned k = 0;
  unsigned m = 0;
  unsigned p = 2;
  std::vector<double> P;
  std::vector<double> Q;
  double alpha = 1.0;

  static IterationCoefficients from(const PadePair& pade) {
    IterationCoefficients c{pade.k, pade.m, pade.p, {}, {}, padefam::alpha(pade.k, pade.m, pade.p).to_double()};
    for (const auto& r : pade.P.coeffs()) c.P.push_back(r.to_double());
    for (const auto& r : pade.Q.coeffs()) c.Q.push_back(r.to_double());
    return c;
  }
  static IterationCoefficients from(const IterConfig& cfg) { return from(pade_pair(cfg.k, cfg.m, cfg.p)); }
};

inline bool in_region(cdouble x, unsigned p) { return std::abs(1.0 - ipow(x, p)) < 1.0; }

inline double residual(cdouble x, unsigned p) { return std::abs(1.0 - ipow(x, p)); }

namespace detail {
inline cdouble horner(const std::vector<double>& c, cdouble t) {
  cdouble acc(0.0);
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}
}  // namespace detail

/// x P(1 - x^p) / Q(1 - x^p).
inline cdouble h_apply(cdouble x, const IterationCoefficients& c, std::size_t step = 0) {
  const cdouble t = 1.0 - ipow(x, c.p);
  const cdouble num = detail::horner(c.P, t);
  const cdouble den = detail::horner(c.Q, t);
  if (std::abs(den) < 1e-300 * (1.0 + std::abs(num)))
    throw SingularDenominator("h_apply: Q(1 - x^p) is numerically zero", step);
  return x * (num / den);
}

inline cdouble h_apply(cdouble x, const PadePair& pade) { return h_apply(x, IterationCoefficients::from(pade)); }

/// |1 - x_0^p|^{q^l} with q = k+m+1. Zero once q^l passes 2^52 inside the
/// region.
inline double conjecture_bound(double r0, unsigned q, std::size_t l) {
  const double e = std::pow(static_cast<double>(q), static_cast<double>(l));
  if (r0 < 1.0 && e > 0x1p52) return 0.0;
  return std::pow(r0, e);
}

/// conjecture_bound * ((r0 + alpha)/(1 + alpha r0))^{(q^l - 1)/(q - 1)}.
/// The exponent is the geometric sum 1 + q + ... + q^{l-1}, which is l for q = 1.
inline double strengthened_bound(double r0, unsigned q, double alpha, std::size_t l) {
  const double e = std::pow(static_cast<double>(q), static_cast<double>(l));
  if (r0 < 1.0 && e > 0x1p52) return 0.0;
  const double geo = q == 1 ? static_cast<double>(l) : (e - 1.0) / static_cast<double>(q - 1);
  const double g = (r0 + alpha) / (1.0 + alpha * r0);
  return conjecture_bound(r0, q, l) * std::pow(g, geo);
}

struct StepRecord {
  std::size_t l = 0;
  cdouble x;
  double residual = 0;
  double conjecture_bound = 0;
  double strengthened_bound = 0;
  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Trace {
  std::vector<StepRecord> steps;
  bool converged = false;
  bool diverged = false;
  cdouble limit;
};

/// Runs x_{l+1} = h_km(x_l) from x0 until |1 - x^p| <= tol, the residual
/// exceeds 1e6 (diverged), or max_iter steps.
inline Trace iterate(cdouble x0, const IterConfig& cfg, const IterationCoefficients& c) {
  cfg.validate();
  Trace tr;
  const unsigned q = cfg.order();
  cdouble x = x0;
  const double r0 = residual(x0, cfg.p);
  for (std::size_t l = 0;; ++l) {
    const double r = l == 0 ? r0 : residual(x, cfg.p);
    tr.steps.push_back({l, x, r, conjecture_bound(r0, q, l), strengthened_bound(r0, q, c.alpha, l)});
    if (r <= cfg.tol) { tr.converged = true; break; }
    if (!std::isfinite(r) || r > 1e6) { tr.diverged = true; break; }
    if (l == cfg.max_iter) break;
    x = h_apply(x, c, l + 1);
  }
  tr.limit = x;
  return tr;
}

inline Trace iterate(cdouble x0, const IterConfig& cfg) { return iterate(x0, cfg, IterationCoefficients::from(cfg)); }

/// exp(log(y)/p) on the principal branch; rejects y = 0 and arg y = pi.
inline cdouble principal_root(cdouble y, unsigned p) {
  if (y == cdouble(0.0)) throw BranchCut("principal_root: zero argument");
  if (std::numbers::pi - std::abs(std::arg(y)) < 1e-13) throw BranchCut("principal_root: argument on the branch cut");
  return std::exp(std::log(y) / static_cast<double>(p));
}

/// x (x^p)^{-1/p}: the p-th root of unity whose sector contains x.
inline cdouble scalar_sector(cdouble x, unsigned p) {
  if (x == cdouble(0.0)) throw BranchCut("scalar_sector: x = 0");
  return x / principal_root(ipow(x, p), p);
}

struct BoundViolation {
  std::size_t l = 0;
  std::string kind;  // "conjecture", "strengthened", "ordering"
  double residual = 0;
  double bound = 0;
};

struct BoundReport {
  std::vector<BoundViolation> violations;
  std::size_t checked = 0;
  /// Converged steps where both the residual and the bound sit below the
  /// stopping tolerance, i.e. beneath what double rounding can resolve.
  std::size_t below_resolution = 0;
  /// Steps that failed in double but hold on the 256-bit replay of the orbit.
  std::size_t rechecked = 0;
  bool passed() const noexcept { return violations.empty(); }
};

/// Checks every step of `trace` against
///   residual_l <= |t_0|^{q^l}                                  (conjecture)
///   residual_l <= |t_0|^{q^l} g^{(q^l - 1)/(q - 1)}            (strengthened)
/// and strengthened <= conjecture for l >= 1, with relative slack 1e-12.
/// A step that fails in double is replayed from x_0 at 256 bits and only
/// counts as a violation if it fails there too.
inline BoundReport check_bounds(const Trace& trace, const IterConfig& cfg, double alpha) {
  cfg.validate();
  if (trace.steps.empty()) throw InvalidParameters("check_bounds: empty trace");
  const double r0 = trace.steps.front().residual;
  if (!(r0 < 1.0)) throw InvalidParameters("check_bounds: x_0 outside the convergence region");
  constexpr double kSlack = 1e-12;
  const auto within = [](double v, double bound) { return v <= bound * (1.0 + kSlack) + 1e-300; };

  BoundReport rep;
  std::optional<PadePair> pade;
  const unsigned q = cfg.order();
  for (const auto& s : trace.steps) {
    const double conj = conjecture_bound(r0, q, s.l);
    const double strong = strengthened_bound(r0, q, alpha, s.l);
    const bool unresolved = s.residual <= cfg.tol && strong < cfg.tol;
    bool conj_ok = within(s.residual, conj);
    bool strong_ok = within(s.residual, strong);
    ++rep.checked;
    if ((!conj_ok || !strong_ok) && unresolved) {
      ++rep.below_resolution;
    } else if (!conj_ok || !strong_ok) {
      if (!pade) pade = pade_pair(cfg.k, cfg.m, cfg.p);
      const PreciseStep ps = precise_step(trace.steps.front().x, *pade, s.l);
      // The replay may only overrule the trace where the two agree to
      // rounding: 64 ulps of 1, the scale on which 1 - x^p is computed.
      const bool agrees = std::abs(ps.residual.get_d() - s.residual) <= 64 * std::numeric_limits<double>::epsilon();
      const mpf_class slack(1.0 + kSlack, kPreciseBits);
      if (agrees) {
        conj_ok = ps.residual <= ps.conjecture * slack;
        strong_ok = ps.residual <= ps.strengthened * slack;
      }
      if (conj_ok && strong_ok) ++rep.rechecked;
      if (!conj_ok) rep.violations.push_back({s.l, "conjecture", s.residual, conj});
      if (!strong_ok) rep.violations.push_back({s.l, "strengthened", s.residual, strong});
    }
    if (s.l >= 1 && !within(strong, conj)) rep.violations.push_back({s.l, "ordering", strong, conj});
  }
  return rep;
}

/// Uniform sample from {x : |1 - x^p| < 1} by rejection from the box
/// |Re x|, |Im x| <= 2^{1/p}.
template <class Rng>
cdouble sample_in_region(Rng& rng, unsigned p) {
  const double r = std::pow(2.0, 1.0 / static_cast<double>(p));
  std::uniform_real_distribution<double> u(-r, r);
  for (;;) {
    const cdouble x(u(rng), u(rng));
    if (in_region(x, p)) return x;
  }
}

}  // namespace padefam
