#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "padefam/scalar_iteration.hpp"

using namespace padefam;

TEST(InRegion, Examples) {
  for (unsigned p = 2; p <= 6; ++p) {
    EXPECT_TRUE(in_region(1.0, p));
    EXPECT_FALSE(in_region(0.0, p));  // boundary excluded
  }
  EXPECT_TRUE(in_region(0.5, 2));
  EXPECT_FALSE(in_region(cdouble(0.0, 1.0), 2));  // 1 - i^2 = 2
}

TEST(HApply, FixedPointAtOne) {
  for (unsigned k = 0; k <= 3; ++k)
    for (unsigned m = 0; m <= k + 1; ++m)
      for (unsigned p = 2; p <= 5; ++p) EXPECT_EQ(h_apply(1.0, pade_pair(k, m, p)), cdouble(1.0));
}

TEST(HApply, NewtonLikeClosedForm) {
  // h_01 = 2x/(x^2 + 1) for p = 2.
  const PadePair pp = pade_pair(0, 1, 2);
  EXPECT_NEAR(std::abs(h_apply(0.5, pp) - 0.8), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(h_apply(0.8, pp) - 1.6 / 1.64), 0.0, 1e-15);
}

TEST(HApply, SingularDenominatorThrows) {
  // Q_01(t) = 1 - t/2 vanishes at t = 1 - i^2 = 2.
  EXPECT_THROW(h_apply(cdouble(0.0, 1.0), pade_pair(0, 1, 2)), SingularDenominator);
}

TEST(Iterate, StartAtOneConvergesImmediately) {
  const Trace tr = iterate(1.0, IterConfig{1, 1, 3});
  ASSERT_EQ(tr.steps.size(), 1u);
  EXPECT_TRUE(tr.converged);
  EXPECT_EQ(tr.limit, cdouble(1.0));
}

TEST(Iterate, HandIteration01p2) {
  const IterConfig cfg{0, 1, 2};
  const Trace tr = iterate(0.5, cfg);
  ASSERT_GE(tr.steps.size(), 3u);
  EXPECT_NEAR(tr.steps[0].residual, 0.75, 1e-15);
  EXPECT_NEAR(tr.steps[1].residual, 0.36, 1e-15);
  const double x2 = 1.6 / 1.64;
  EXPECT_NEAR(tr.steps[2].residual, 1.0 - x2 * x2, 1e-15);
  for (std::size_t l = 1; l < tr.steps.size(); ++l) EXPECT_LT(tr.steps[l].residual, tr.steps[l - 1].residual);
  EXPECT_TRUE(tr.converged);
  EXPECT_NEAR(std::abs(tr.limit - 1.0), 0.0, 1e-14);
  // Conjecture bounds 0.75^{2^l}.
  EXPECT_NEAR(tr.steps[1].conjecture_bound, 0.5625, 1e-15);
  EXPECT_NEAR(tr.steps[2].conjecture_bound, 0.31640625, 1e-15);
}

TEST(Iterate, HalleyComplexStartGoesToMinusOne) {
  const IterConfig cfg{1, 1, 2};
  const cdouble x0(-0.9, 0.2);
  ASSERT_TRUE(in_region(x0, 2));
  const Trace tr = iterate(x0, cfg);
  EXPECT_TRUE(tr.converged);
  EXPECT_NEAR(std::abs(tr.limit - cdouble(-1.0)), 0.0, 1e-12);
  EXPECT_LE(std::abs(ipow(tr.limit, 2) - 1.0), cfg.tol);
}

TEST(Iterate, DivergenceIsRecordedNotThrown) {
  // [1/0] with p = 2 is the cubic x(3 - x^2)/2, which blows up from x = 3.
  const Trace tr = iterate(3.0, IterConfig{1, 0, 2});
  EXPECT_TRUE(tr.diverged);
  EXPECT_FALSE(tr.converged);
}

TEST(Iterate, MaxIterCap) {
  const Trace tr = iterate(cdouble(0.01, 0.0), IterConfig{0, 1, 2, 2, 1e-14});
  EXPECT_FALSE(tr.converged);
  EXPECT_EQ(tr.steps.size(), 3u);
}

TEST(IterConfig, Validation) {
  EXPECT_THROW((IterConfig{0, 1, 2, 64, 0.0}.validate()), InvalidParameters);
  EXPECT_THROW((IterConfig{0, 1, 2, 0, 1e-14}.validate()), InvalidParameters);
  EXPECT_NO_THROW((IterConfig{0, 3, 2}.validate()));
  EXPECT_THROW((IterConfig{1, 1, 1}.validate()), InvalidParameters);
}

TEST(ScalarSector, Examples) {
  EXPECT_NEAR(std::abs(scalar_sector(2.0, 3) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(scalar_sector(-2.0, 2) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(scalar_sector(cdouble(1.0, 1.0), 2) - 1.0), 0.0, 1e-15);
  // Third-root sector containing arg 2 pi / 3.
  EXPECT_NEAR(std::abs(scalar_sector(std::polar(1.7, 2.0), 3) - std::polar(1.0, 2.0 * std::numbers::pi / 3)), 0.0,
              1e-14);
}

TEST(ScalarSector, BranchCutAndZeroThrow) {
  EXPECT_THROW(scalar_sector(0.0, 2), BranchCut);
  EXPECT_THROW(scalar_sector(cdouble(0.0, 1.0), 2), BranchCut);  // i^2 = -1
  EXPECT_THROW(principal_root(-4.0, 2), BranchCut);
}

TEST(Bounds, FormulaValues) {
  EXPECT_DOUBLE_EQ(conjecture_bound(0.75, 2, 0), 0.75);
  EXPECT_DOUBLE_EQ(conjecture_bound(0.75, 2, 3), std::pow(0.75, 8));
  // Saturation once q^l passes 2^52.
  EXPECT_EQ(conjecture_bound(0.9, 3, 40), 0.0);
  EXPECT_EQ(strengthened_bound(0.9, 3, 0.1, 40), 0.0);
  // Geometric exponent degenerates to l for q = 1.
  EXPECT_DOUBLE_EQ(strengthened_bound(0.5, 1, 1.0, 4), 0.5);
}

TEST(CheckBounds, NewtonBoundFromHalf) {
  const IterConfig cfg{0, 1, 2};
  const Trace tr = iterate(0.5, cfg);
  const BoundReport rep = check_bounds(tr, cfg, alpha(0, 1, 2).to_double());
  EXPECT_TRUE(rep.passed());
  EXPECT_LE(tr.steps[1].residual, 0.5625);
  // l = 0 is the equality case.
  EXPECT_EQ(tr.steps[0].conjecture_bound, tr.steps[0].residual);
}

TEST(CheckBounds, HalleyStrengthenedBelowConjecture) {
  const double a = alpha(1, 1, 2).to_double();
  EXPECT_DOUBLE_EQ(a, 1.0 / 16.0);
  const double r0 = 0.6;
  const double want = r0 * r0 * r0 * (r0 + a) / (1.0 + a * r0);
  EXPECT_NEAR(strengthened_bound(r0, 3, a, 1), want, 1e-16);
  EXPECT_LT(strengthened_bound(r0, 3, a, 1), conjecture_bound(r0, 3, 1));
}

TEST(CheckBounds, DetectsAnInjectedViolation) {
  const IterConfig cfg{1, 1, 3};
  Trace tr = iterate(cdouble(0.7, 0.2), cfg);
  ASSERT_GE(tr.steps.size(), 2u);
  tr.steps[1].residual = 2.0 * tr.steps[1].conjecture_bound;
  const BoundReport rep = check_bounds(tr, cfg, alpha(1, 1, 3).to_double());
  ASSERT_FALSE(rep.passed());
  EXPECT_EQ(rep.violations.front().l, 1u);
}

TEST(CheckBounds, RejectsOutOfRegionStart) {
  const IterConfig cfg{0, 1, 2};
  EXPECT_THROW(check_bounds(iterate(cdouble(0.0, 1.2), cfg), cfg, 0.25), InvalidParameters);
}

// Property sweep on a reduced sample; the full sweep lives in the acceptance suite.
TEST(IterateProperty, BoundsAndLimitsOnRandomStarts) {
  const unsigned pairs[][2] = {{0, 1}, {1, 0}, {1, 1}, {0, 2}, {1, 2}, {2, 1}, {2, 0}, {2, 2}};
  std::mt19937_64 rng(5);
  for (unsigned p = 2; p <= 5; ++p)
    for (const auto& km : pairs) {
      const IterConfig cfg{km[0], km[1], p};
      const IterationCoefficients c = IterationCoefficients::from(cfg);
      for (int s = 0; s < 100; ++s) {
        const cdouble x0 = sample_in_region(rng, p);
        const Trace tr = iterate(x0, cfg, c);
        ASSERT_TRUE(tr.converged) << x0;
        EXPECT_TRUE(check_bounds(tr, cfg, c.alpha).passed()) << x0;
        EXPECT_LT(std::abs(tr.limit - scalar_sector(x0, p)), 1e-10) << x0;
      }
    }
}

// |1 - h(x)^p| < |1 - x^p| for x = omega (1 + eps) inside the region.
TEST(IterateProperty, StrictContractionNearRootsOfUnity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> eps(-0.3, 0.3);
  for (unsigned p = 2; p <= 5; ++p)
    for (unsigned k = 0; k <= 2; ++k)
      for (unsigned m = 0; m <= k + 1 && m <= 2; ++m) {
        if (k + m == 0) continue;
        const IterationCoefficients c = IterationCoefficients::from(pade_pair(k, m, p));
        for (int s = 0; s < 50; ++s) {
          std::uniform_int_distribution<unsigned> j(0, p - 1);
          const cdouble omega = std::polar(1.0, 2.0 * std::numbers::pi * j(rng) / p);
          const cdouble x = omega * cdouble(1.0 + eps(rng), eps(rng));
          if (!in_region(x, p)) continue;
          EXPECT_LT(residual(h_apply(x, c), p), residual(x, p));
        }
      }
}

TEST(IterateProperty, LocalOrderOfConvergence) {
  for (unsigned p = 2; p <= 5; ++p)
    for (unsigned k = 0; k <= 2; ++k)
      for (unsigned m = 0; m <= k + 1 && m <= 2; ++m) {
        if (k + m == 0) continue;
        const IterationCoefficients c = IterationCoefficients::from(pade_pair(k, m, p));
        // x0^p = 1 - 1e-2 e^{i theta}
        for (double th : {0.0, 1.0, 2.5}) {
          const cdouble x0 = principal_root(1.0 - std::polar(1e-2, th), p);
          const double r0 = residual(x0, p);
          const double r1 = residual(h_apply(x0, c), p);
          EXPECT_GE(std::log(r1) / std::log(r0), k + m + 1 - 0.1) << k << m << p;
        }
      }
}

TEST(PreciseOrbit, MatchesDoubleOrbit) {
  const IterConfig cfg{2, 1, 3};
  const PadePair pade = pade_pair(2, 1, 3);
  const Trace tr = iterate(cdouble(0.7, 0.4), cfg);
  for (const auto& s : tr.steps) {
    const PreciseStep ps = precise_step(tr.steps.front().x, pade, s.l);
    EXPECT_NEAR(ps.residual.get_d(), s.residual, 1e-15) << s.l;
    EXPECT_NEAR(ps.conjecture.get_d(), s.conjecture_bound, 1e-14 * s.conjecture_bound) << s.l;
    EXPECT_NEAR(ps.strengthened.get_d(), s.strengthened_bound, 1e-14 * s.strengthened_bound) << s.l;
  }
}

// A step whose double residual lands a fraction of an ulp above the bound:
// the 256-bit replay of the same orbit settles it.
TEST(CheckBounds, RoundingLevelExcessIsReplayed) {
  const IterConfig cfg{5, 0, 2};
  const IterationCoefficients c = IterationCoefficients::from(cfg);
  std::mt19937_64 rng(0);
  std::size_t settled = 0;
  for (int i = 0; i < 20000 && settled == 0; ++i) {
    // Starts near -1 put the l = 1 residual just above the stopping tolerance.
    const cdouble x0 = -1.0 + cdouble(std::uniform_real_distribution<double>(-6e-3, 6e-3)(rng),
                                      std::uniform_real_distribution<double>(-6e-3, 6e-3)(rng));
    if (!in_region(x0, 2)) continue;
    const BoundReport rep = check_bounds(iterate(x0, cfg, c), cfg, c.alpha);
    EXPECT_TRUE(rep.passed()) << x0;
    settled += rep.rechecked;
  }
  EXPECT_GT(settled, 0u);
}
