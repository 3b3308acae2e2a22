#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/pade.hpp"

namespace padefam {

/// One pole of P/Q, written as lambda / (1 - a t) with a = 1/z.
struct Pole {
  double z = 0;        // root of Q
  double a = 0;        // 1 / z
  double lambda = 0;   // -P(z) / (z Q'(z))
  double residue = 0;  // P(z) / Q'(z)
};

struct PoleReport {
  unsigned k = 0;
  unsigned m = 0;
  unsigned p = 2;
  std::vector<Pole> poles;
  /// Every pole is real with z > 1 and has lambda > 0, 0 < a < 1.
  bool stieltjes = true;
};

namespace detail {

inline std::vector<double> to_doubles(const SeriesPoly& s) {
  std::vector<double> out;
  out.reserve(s.coeffs().size());
  for (const auto& c : s.coeffs()) out.push_back(c.to_double());
  return out;
}

inline double horner(const std::vector<double>& c, double x) {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

inline double horner_abs(const std::vector<double>& c, double x) {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * std::abs(x) + std::abs(c[i]);
  return acc;
}

inline double horner_prime(const std::vector<double>& c, double x) {
  double acc = 0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
  return acc;
}

}  // namespace detail

/// Locates the roots of Q_km on (1, inf) by sign-change bracketing and
/// bisection, then evaluates the partial-fraction weights of P/Q there.
///
/// The scan grid is 1 + (zmax - 1) (i/n)^3, dense near the branch point,
/// and zmax doubles until deg Q sign changes are bracketed. Throws
/// RootIsolationFailure when that never happens or when a bisected root
/// leaves |Q(z)| above 1e-12 times the absolute Horner sum.
inline PoleReport stieltjes_structure(unsigned k, unsigned m, unsigned p) {
  const PadePair pade = pade_pair(k, m, p);
  PoleReport rep{k, m, p, {}, true};
  const auto deg = pade.Q.degree();
  const std::size_t expected = deg ? *deg : 0;
  if (expected == 0) return rep;

  const std::vector<double> P = detail::to_doubles(pade.P);
  const std::vector<double> Q = detail::to_doubles(pade.Q);

  constexpr std::size_t kGrid = 4096;
  std::vector<std::pair<double, double>> brackets;
  for (double zmax = 2.0; zmax < 1e18; zmax *= 2.0) {
    brackets.clear();
    double prev_z = 1.0;
    double prev_q = detail::horner(Q, prev_z);
    for (std::size_t i = 1; i <= kGrid; ++i) {
      const double s = static_cast<double>(i) / kGrid;
      const double z = 1.0 + (zmax - 1.0) * s * s * s;
      const double q = detail::horner(Q, z);
      if (q == 0.0 || (prev_q != 0.0 && std::signbit(q) != std::signbit(prev_q))) brackets.emplace_back(prev_z, z);
      prev_z = z;
      prev_q = q;
    }
    if (brackets.size() >= expected) break;
  }
  if (brackets.size() != expected)
    throw RootIsolationFailure("stieltjes_structure: bracketed " + std::to_string(brackets.size()) + " of " +
                               std::to_string(expected) + " roots of Q on (1, inf)");

  for (auto [lo, hi] : brackets) {
    double qlo = detail::horner(Q, lo);
    for (int it = 0; it < 200 && hi - lo > 1e-16 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double qm = detail::horner(Q, mid);
      if (qm == 0.0) { lo = hi = mid; break; }
      if (std::signbit(qm) == std::signbit(qlo)) { lo = mid; qlo = qm; }
      else hi = mid;
    }
    const double z = 0.5 * (lo + hi);
    if (std::abs(detail::horner(Q, z)) > 1e-12 * detail::horner_abs(Q, z))
      throw RootIsolationFailure("stieltjes_structure: residual of root " + std::to_string(z) + " exceeds tolerance");
    Pole pole;
    pole.z = z;
    pole.a = 1.0 / z;
    pole.residue = detail::horner(P, z) / detail::horner_prime(Q, z);
    pole.lambda = -pole.residue / z;
    rep.stieltjes = rep.stieltjes && z > 1.0 && pole.lambda > 0.0 && pole.a > 0.0 && pole.a < 1.0;
    rep.poles.push_back(pole);
  }
  return rep;
}

}  // namespace padefam
