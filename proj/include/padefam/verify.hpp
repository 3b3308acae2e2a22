#pragma once

// Grid sweeps behind `padefam verify`. Each check yields one CheckResult;
// callers print them and derive the exit status.

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padefam/identities.hpp"
#include "padefam/pade.hpp"
#include "padefam/sample_table.hpp"
#include "padefam/scalar_iteration.hpp"
#include "padefam/stieltjes.hpp"

namespace padefam::verify {

struct Options {
  unsigned kmax = 6;
  unsigned mmax = 6;
  unsigned pmax = 7;
  std::size_t order = 30;            // series identities
  std::size_t positivity_order = 40;
  std::size_t samples = 1000;        // scalar starts per (k, m, p)
  std::uint64_t seed = 42;
  double tol = 1e-14;
  std::size_t max_iter = 64;
};

struct CheckResult {
  std::string suite;
  std::string check;
  unsigned k = 0;
  unsigned m = 0;
  unsigned p = 0;
  bool pass = false;
  std::string detail;
};

struct Cell {
  unsigned k, m, p;
};

inline std::vector<Cell> grid(const Options& o) {
  std::vector<Cell> cells;
  for (unsigned k = 0; k <= o.kmax; ++k)
    for (unsigned m = 0; m <= o.mmax && m <= k + 1; ++m)
      for (unsigned p = 2; p <= o.pmax; ++p) cells.push_back({k, m, p});
  return cells;
}

namespace detail {

inline std::string first_nonzero_detail(const SeriesPoly& s) {
  const auto i = s.first_nonzero();
  if (!i) return "";
  std::ostringstream os;
  os << "nonzero coefficient at t^" << *i << ": " << s[*i];
  return os.str();
}

inline CheckResult zero_check(const char* suite, const char* name, Cell c, const std::function<SeriesPoly()>& fn) {
  CheckResult r{suite, name, c.k, c.m, c.p, false, ""};
  try {
    const SeriesPoly s = fn();
    r.pass = s.is_zero();
    r.detail = r.pass ? "zero to order " + std::to_string(s.order()) : first_nonzero_detail(s);
  } catch (const std::exception& e) {
    r.detail = e.what();
  }
  return r;
}

/// Random rational with denominator in [2, 12] and numerator in [-24, 24].
template <class Rng>
Rational random_rational(Rng& rng) {
  std::uniform_int_distribution<long> num(-24, 24);
  std::uniform_int_distribution<long> den(2, 12);
  return Rational(num(rng), den(rng));
}

}  // namespace detail

/// (a, b, c) with c not an integer, so that every 2F1 and prefactor in the
/// hypergeometric identity is defined.
template <class Rng>
std::vector<Rational> random_admissible_triple(Rng& rng) {
  for (;;) {
    Rational a = detail::random_rational(rng);
    Rational b = detail::random_rational(rng);
    Rational c = detail::random_rational(rng);
    if (!c.is_integer()) return {a, b, c};
  }
}

inline std::vector<CheckResult> identities_suite(const Options& o) {
  std::vector<CheckResult> out;
  for (const Cell c : grid(o)) {
    const std::size_t n = std::max<std::size_t>(o.order, c.k + c.m + 2);
    out.push_back(detail::zero_check("identities", "polynomial-identity", c,
                                     [&] { return polynomial_identity_residual(c.k, c.m, c.p); }));
    out.push_back(detail::zero_check("identities", "lemma-error", c,
                                     [&] { return lemma_error_residual(c.k, c.m, c.p, n); }));
    out.push_back(detail::zero_check("identities", "wronskian", c,
                                     [&] { return wronskian_identity_residual(c.k, c.m, c.p, n); }));
    out.push_back(detail::zero_check("identities", "hypergeometric-specialized", c,
                                     [&] { return hypergeometric_identity_residual(c.k, c.m, c.p, n); }));
    // Pade order: zero through t^{k+m}.
    out.push_back(detail::zero_check("identities", "pade-order", c, [&] {
      return pade_order_residual(c.k, c.m, c.p, n).truncate(c.k + c.m);
    }));
    if (const auto want = sample_iteration_function(c.k, c.m, c.p)) {
      const IterationFunction got = iteration_function(pade_pair(c.k, c.m, c.p));
      CheckResult r{"identities", "sample-table", c.k, c.m, c.p, false, ""};
      r.pass = got.numerator == want->numerator && got.denominator == want->denominator;
      r.detail = "h = " + format_iteration_function(got, c.p);
      out.push_back(r);
    }
  }
  std::mt19937_64 rng(o.seed);
  for (int i = 0; i < 50; ++i) {
    const auto abc = random_admissible_triple(rng);
    CheckResult r = detail::zero_check("identities", "hypergeometric-random", Cell{0, 0, 0},
                                        [&] { return hypergeometric_identity_residual(abc[0], abc[1], abc[2], o.order); });
    r.detail = "(a,b,c)=(" + abc[0].str() + "," + abc[1].str() + "," + abc[2].str() + ") " + r.detail;
    out.push_back(r);
  }
  return out;
}

inline std::vector<CheckResult> positivity_suite(const Options& o) {
  std::vector<CheckResult> out;
  for (const Cell c : grid(o)) {
    const std::size_t lead = c.k + c.m + 1;
    const std::size_t n = std::max<std::size_t>(o.positivity_order, lead);
    // strict positivity needs m >= 1; for m = 0 f_km is a polynomial
    // and only nonnegativity holds.
    const bool strict = c.m >= 1;
    try {
      const FSeriesReport f = f_series(c.k, c.m, c.p, n);
      CheckResult zeros{"positivity", "f-leading-zeros", c.k, c.m, c.p, true, ""};
      for (std::size_t i = 0; i < lead; ++i)
        if (!f.coeffs[i].is_zero()) {
          zeros.pass = false;
          zeros.detail = "c_" + std::to_string(i) + " = " + f.coeffs[i].str();
          break;
        }
      out.push_back(zeros);

      CheckResult pos{"positivity", strict ? "f-positive" : "f-nonnegative", c.k, c.m, c.p, true,
                      "c_i checked for " + std::to_string(lead) + " <= i <= " + std::to_string(n)};
      for (std::size_t i = lead; i <= n; ++i) {
        const int s = f.coeffs[i].sign();
        if (strict ? s <= 0 : s < 0) {
          pos.pass = false;
          pos.detail = "c_" + std::to_string(i) + " = " + f.coeffs[i].str();
          break;
        }
      }
      out.push_back(pos);

      CheckResult first{"positivity", "first-coefficient-is-alpha", c.k, c.m, c.p,
                        f.first_nonzero_index == lead && f.coeffs[lead] == f.alpha, "alpha = " + f.alpha.str()};
      out.push_back(first);

      if (c.k + c.m >= 1) {
        out.push_back({"positivity", "alpha-below-one", c.k, c.m, c.p, f.alpha < Rational(1), "alpha = " + f.alpha.str()});
      } else {
        out.push_back({"positivity", "alpha-equals-one-at-00", c.k, c.m, c.p, f.alpha == Rational(1),
                       "alpha = " + f.alpha.str() + " (equality case)"});
      }
      if (c.k == 1 && c.m == 1) {
        const Rational P(static_cast<long>(c.p));
        const Rational want = (P + Rational(1)) * (P - Rational(1)) / (Rational(12) * P * P);
        out.push_back({"positivity", "alpha-halley-closed-form", c.k, c.m, c.p, f.alpha == want, "alpha = " + f.alpha.str()});
      }

      const SeriesPoly ratio = ratio_series(pade_pair(c.k, c.m, c.p), n);
      CheckResult rp{"positivity", strict ? "ratio-positive" : "ratio-nonnegative", c.k, c.m, c.p, true, ""};
      for (std::size_t i = 0; i <= n; ++i) {
        const int s = ratio[i].sign();
        if (strict ? s <= 0 : s < 0) {
          rp.pass = false;
          rp.detail = "[P/Q]_" + std::to_string(i) + " = " + ratio[i].str();
          break;
        }
      }
      out.push_back(rp);
    } catch (const std::exception& e) {
      out.push_back({"positivity", "f-series", c.k, c.m, c.p, false, e.what()});
    }
    if (c.m >= 1) {
      CheckResult st{"positivity", "stieltjes-poles", c.k, c.m, c.p, false, ""};
      try {
        const PoleReport rep = stieltjes_structure(c.k, c.m, c.p);
        st.pass = rep.stieltjes && rep.poles.size() == c.m;
        std::ostringstream os;
        os << rep.poles.size() << " poles, min z = " << (rep.poles.empty() ? 0.0 : rep.poles.front().z);
        st.detail = os.str();
      } catch (const std::exception& e) {
        st.detail = e.what();
      }
      out.push_back(st);
    }
  }
  return out;
}

/// Per (k, m, p) with k + m >= 1: `samples` seeded starts in the region,
/// checking both bounds at every step, convergence, and the limit against
/// the scalar sector function.
inline std::vector<CheckResult> bounds_suite(const Options& o) {
  std::vector<CheckResult> out;
  for (const Cell c : grid(o)) {
    if (c.k + c.m == 0) continue;
    const IterConfig cfg{c.k, c.m, c.p, o.max_iter, o.tol};
    const IterationCoefficients coeffs = IterationCoefficients::from(cfg);
    std::mt19937_64 rng(o.seed ^ (0x9E3779B97F4A7C15ull * (1 + c.k * 64 + c.m * 8 + c.p)));
    std::size_t violations = 0;
    std::size_t unconverged = 0;
    std::size_t limit_mismatch = 0;
    std::size_t below_res = 0;
    std::size_t rechecked = 0;
    std::string first;
    for (std::size_t s = 0; s < o.samples; ++s) {
      const cdouble x0 = sample_in_region(rng, c.p);
      try {
        const Trace tr = iterate(x0, cfg, coeffs);
        const BoundReport rep = check_bounds(tr, cfg, coeffs.alpha);
        below_res += rep.below_resolution;
        rechecked += rep.rechecked;
        if (!rep.passed()) {
          violations += rep.violations.size();
          if (first.empty()) {
            std::ostringstream os;
            os << "x0=" << x0 << " l=" << rep.violations.front().l << " " << rep.violations.front().kind
               << " residual=" << rep.violations.front().residual << " bound=" << rep.violations.front().bound;
            first = os.str();
          }
        }
        if (!tr.converged) ++unconverged;
        else if (std::abs(tr.limit - scalar_sector(x0, c.p)) > 1e-10) ++limit_mismatch;
      } catch (const std::exception& e) {
        ++violations;
        if (first.empty()) first = e.what();
      }
    }
    std::ostringstream os;
    os << o.samples << " starts, " << violations << " violations, " << unconverged << " unconverged, "
       << limit_mismatch << " limit mismatches, " << below_res << " steps below resolution, " << rechecked
       << " settled at 256 bits";
    if (!first.empty()) os << "; first: " << first;
    out.push_back({"bounds", "conjecture+strengthened", c.k, c.m, c.p,
                   violations == 0 && unconverged == 0 && limit_mismatch == 0, os.str()});
  }
  return out;
}

inline std::vector<CheckResult> run(const std::string& suite, const Options& o) {
  std::vector<CheckResult> out;
  const auto append = [&out](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  if (suite == "identities" || suite == "all") append(identities_suite(o));
  if (suite == "positivity" || suite == "all") append(positivity_suite(o));
  if (suite == "bounds" || suite == "all") append(bounds_suite(o));
  if (suite != "identities" && suite != "positivity" && suite != "bounds" && suite != "all")
    throw InvalidParameters("unknown suite '" + suite + "'");
  return out;
}

}  // namespace padefam::verify
