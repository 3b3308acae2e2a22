#pragma once

#include <cmath>
#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "padefam/cmatrix.hpp"
#include "padefam/errors.hpp"
#include "padefam/scalar_iteration.hpp"

namespace padefam {

struct MatIterResult {
  CMatrix result;
  std::size_t steps = 0;
  std::vector<double> residual_history;  // steps + 1 entries
  bool converged = false;
  bool diverged = false;
  bool at_floor = false;  // converged by stagnation below kFloorFactor sqrt(n) tol
};

/// X P(T) Q(T)^{-1} for a precomputed argument T; P(T) and Q(T) commute so
/// a single LU solve Q(T) Y = P(T) suffices.
inline CMatrix pade_step(const CMatrix& x, const CMatrix& t, const IterationCoefficients& c, std::size_t step) {
  const CMatrix num = horner(c.P, t);
  const CMatrix den = horner(c.Q, t);
  try {
    return mat_mul(x, lu_solve(den, num));
  } catch (const SingularMatrix&) {
    throw SingularDenominator("Q(T) is numerically singular at step " + std::to_string(step), step);
  }
}

/// One step of the sector iteration, X -> X P(I - X^p) Q(I - X^p)^{-1}.
inline CMatrix sector_step(const CMatrix& x, const IterationCoefficients& c, std::size_t step = 0) {
  return pade_step(x, CMatrix::identity(x.n()) - mat_pow(x, c.p), c, step);
}

constexpr double kMatrixDivergence = 1e8;

/// Residuals within kFloorFactor sqrt(n) tol that stop at least halving are
/// taken as the rounding floor: further steps only amplify rounding errors.
constexpr double kFloorFactor = 10.0;

namespace detail {

// `measure(x)` returns the residual of x and the argument T of the next step.
template <class Measure>
MatIterResult drive(const CMatrix& x0, const IterConfig& cfg, const IterationCoefficients& c, Measure measure) {
  const double floor = kFloorFactor * std::sqrt(static_cast<double>(x0.n())) * cfg.tol;
  MatIterResult out{x0, 0, {}, false, false, false};
  CMatrix x = x0;
  CMatrix prev = x0;
  for (std::size_t l = 0;; ++l) {
    auto [r, t] = measure(x);
    out.residual_history.push_back(r);
    out.steps = l;
    if (r <= cfg.tol) { out.converged = true; break; }
    if (!std::isfinite(r) || r > kMatrixDivergence) { out.diverged = true; break; }
    if (l >= 1) {
      const double r_prev = out.residual_history[l - 1];
      if (r > 0.5 * r_prev && std::min(r, r_prev) <= floor) {
        out.converged = true;
        out.at_floor = true;
        if (r_prev < r) {
          x = prev;
          out.residual_history.pop_back();
          out.steps = l - 1;
        }
        break;
      }
    }
    if (l == cfg.max_iter) break;
    prev = x;
    x = pade_step(x, t, c, l + 1);
  }
  out.result = x;
  return out;
}

}  // namespace detail

/// X_0 = A, X_{l+1} = X_l P(I - X_l^p) Q(I - X_l^p)^{-1}; stops on
/// ||I - X^p||_F / sqrt(n) <= tol or at the rounding floor.
inline MatIterResult sector_iterate(const CMatrix& a, const IterConfig& cfg, const IterationCoefficients& c) {
  cfg.validate();
  const CMatrix id = CMatrix::identity(a.n());
  const double sqrt_n = std::sqrt(static_cast<double>(a.n()));
  return detail::drive(a, cfg, c, [&](const CMatrix& x) {
    CMatrix t = id - mat_pow(x, c.p);
    const double r = frobenius_norm(t) / sqrt_n;
    return std::pair<double, CMatrix>(r, std::move(t));
  });
}

inline MatIterResult sector_iterate(const CMatrix& a, const IterConfig& cfg) {
  return sector_iterate(a, cfg, IterationCoefficients::from(cfg));
}

/// X_0 = I, X_{l+1} = X_l P(I - A^{-1} X_l^p) Q(I - A^{-1} X_l^p)^{-1};
/// stops on ||A - X^p||_F / ||A||_F <= tol or at the rounding floor.
/// A^{-1} is formed once.
inline MatIterResult pth_root_iterate(const CMatrix& a, const IterConfig& cfg, const IterationCoefficients& c) {
  cfg.validate();
  const CMatrix id = CMatrix::identity(a.n());
  const CMatrix a_inv = inverse(a);
  const double a_norm = frobenius_norm(a);
  return detail::drive(id, cfg, c, [&](const CMatrix& x) {
    const CMatrix xp = mat_pow(x, c.p);
    const double r = frobenius_norm(a - xp) / a_norm;
    return std::pair<double, CMatrix>(r, id - mat_mul(a_inv, xp));
  });
}

inline MatIterResult pth_root_iterate(const CMatrix& a, const IterConfig& cfg) {
  return pth_root_iterate(a, cfg, IterationCoefficients::from(cfg));
}

/// ||S A - A S||_F.
inline double commutator_defect(const CMatrix& a, const CMatrix& s) {
  return frobenius_norm(mat_mul(s, a) - mat_mul(a, s));
}

inline double relative_error(const CMatrix& got, const CMatrix& want) {
  return frobenius_norm(got - want) / frobenius_norm(want);
}

}  // namespace padefam
