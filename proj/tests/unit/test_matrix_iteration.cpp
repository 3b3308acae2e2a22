#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "padefam/matrix_iteration.hpp"
#include "padefam/test_matrix.hpp"

using namespace padefam;

TEST(DenseKernels, PlumbingExamples) {
  const CMatrix id = CMatrix::identity(4);
  for (unsigned p = 1; p <= 5; ++p) EXPECT_EQ(frobenius_norm(mat_pow(id, p) - id), 0.0);
  CMatrix b(3);
  b(0, 1) = cdouble(1.0, 2.0);
  b(2, 0) = -3.0;
  EXPECT_EQ(frobenius_norm(lu_solve(CMatrix::identity(3), b) - b), 0.0);
  const CMatrix d = CMatrix::diagonal({2.0, 3.0});
  EXPECT_EQ(frobenius_norm(mat_pow(d, 2) - CMatrix::diagonal({4.0, 9.0})), 0.0);
}

TEST(DenseKernels, InverseRoundTrip) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  CMatrix a(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j) a(i, j) = cdouble(g(rng), g(rng));
  EXPECT_LT(frobenius_norm(mat_mul(a, inverse(a)) - CMatrix::identity(5)), 1e-12);
}

TEST(DenseKernels, SingularMatrixThrows) {
  CMatrix a(2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  EXPECT_THROW(inverse(a), SingularMatrix);
}

TEST(DenseKernels, RejectsNonFinite) {
  CMatrix::Storage s = CMatrix::Storage::Identity(2, 2);
  s(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(CMatrix{s}, FormatError);
}

TEST(SectorIterate, IdentityInZeroSteps) {
  const MatIterResult r = sector_iterate(CMatrix::identity(3), IterConfig{1, 1, 3});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.steps, 0u);
  EXPECT_EQ(r.residual_history.size(), 1u);
}

TEST(SectorIterate, DiagonalSigns) {
  const unsigned pairs[][2] = {{0, 1}, {1, 1}, {2, 2}, {1, 0}};
  for (const auto& km : pairs) {
    // [1/0] needs the start inside its (smaller) basin: use diag(1.2, -0.9).
    const bool poly = km[1] == 0;
    const CMatrix a = poly ? CMatrix::diagonal({1.2, -0.9}) : CMatrix::diagonal({2.0, -3.0});
    const MatIterResult r = sector_iterate(a, IterConfig{km[0], km[1], 2});
    ASSERT_TRUE(r.converged) << km[0] << km[1];
    EXPECT_LT(frobenius_norm(r.result - CMatrix::diagonal({1.0, -1.0})), 1e-13);
    EXPECT_EQ(r.residual_history.size(), r.steps + 1);
  }
}

TEST(SectorIterate, SingularQReportsStep) {
  // Q_01(I - X^2) = (I + X^2)/2 is singular for X = diag(i).
  try {
    sector_iterate(CMatrix::diagonal({cdouble(0.0, 1.0)}), IterConfig{0, 1, 2});
    FAIL() << "expected SingularDenominator";
  } catch (const SingularDenominator& e) {
    EXPECT_EQ(e.step(), 1u);
  }
}

TEST(SectorIterate, MatchesScalarIterationOn1x1) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::mt19937_64 rng(4);
  for (unsigned p : {2u, 3u, 5u})
    for (int s = 0; s < 20; ++s) {
      const cdouble x0 = sample_in_region(rng, p);
      const IterConfig cfg{1, 1, p};
      const Trace tr = iterate(x0, cfg);
      const IterationCoefficients c = IterationCoefficients::from(cfg);
      CMatrix x = CMatrix::diagonal({x0});
      for (std::size_t l = 1; l < tr.steps.size(); ++l) {
        x = sector_step(x, c, l);
        EXPECT_LE(std::abs(x(0, 0) - tr.steps[l].x), 8 * eps * std::abs(tr.steps[l].x)) << l;
      }
      const MatIterResult r = sector_iterate(CMatrix::diagonal({x0}), cfg);
      ASSERT_EQ(r.residual_history.size(), tr.steps.size());
      for (std::size_t l = 0; l < tr.steps.size(); ++l)
        EXPECT_NEAR(r.residual_history[l], tr.steps[l].residual, 8 * p * eps);
    }
}

TEST(PthRootIterate, IdentityAndScalarCubeRoot) {
  const MatIterResult id = pth_root_iterate(CMatrix::identity(2), IterConfig{1, 1, 4});
  EXPECT_TRUE(id.converged);
  EXPECT_EQ(id.steps, 0u);

  const MatIterResult r = pth_root_iterate(CMatrix::diagonal({1.5}), IterConfig{1, 1, 3});
  ASSERT_TRUE(r.converged);
  EXPECT_NEAR(std::abs(r.result(0, 0) - std::cbrt(1.5)), 0.0, 1e-14);
}

TEST(PthRootIterate, SingularInputThrows) {
  EXPECT_THROW(pth_root_iterate(CMatrix(2), IterConfig{1, 1, 2}), SingularMatrix);
}

TEST(MakeTestMatrix, TrivialSpectra) {
  SpectrumSpec ones{{1.0, 1.0, 1.0}, 3, 11, Similarity::general};
  const TestMatrix t = make_test_matrix(ones);
  EXPECT_LT(frobenius_norm(t.a - CMatrix::identity(3)), 1e-13);
  EXPECT_LT(frobenius_norm(t.oracle_sector - CMatrix::identity(3)), 1e-13);
  EXPECT_LT(frobenius_norm(t.oracle_root - CMatrix::identity(3)), 1e-13);

  SpectrumSpec signs{{2.0, cdouble(-3.0, 0.5)}, 2, 0, Similarity::identity};
  const TestMatrix s = make_test_matrix(signs);
  EXPECT_LT(frobenius_norm(s.oracle_sector - CMatrix::diagonal({1.0, -1.0})), 1e-15);

  // No principal square root for an eigenvalue on the negative axis.
  EXPECT_THROW(make_test_matrix(SpectrumSpec{{2.0, -3.0}, 2, 0, Similarity::identity}), BranchCut);
}

TEST(MakeTestMatrix, DeterministicAndWellConditioned) {
  SpectrumSpec spec{{0.8, 1.3, cdouble(0.9, 0.2)}, 3, 99, Similarity::general};
  const TestMatrix a = make_test_matrix(spec);
  const TestMatrix b = make_test_matrix(spec);
  EXPECT_EQ(frobenius_norm(a.a - b.a), 0.0);
  EXPECT_LT(a.cond_v, kMaxSimilarityCondition);
  // Oracle of the root really is a cube root of A.
  EXPECT_LT(relative_error(mat_pow(a.oracle_root, 3), a.a), 1e-13);
}

TEST(MakeTestMatrix, RejectsZeroEigenvalue) {
  EXPECT_THROW(make_test_matrix(SpectrumSpec{{0.0, 1.0}, 2}), InvalidParameters);
}

TEST(MatrixOracle, SectorAndRootOnSeededSpectra) {
  std::mt19937_64 rng(17);
  for (unsigned p : {2u, 3u, 5u})
    for (std::size_t n : {2u, 5u}) {
      std::vector<cdouble> ev;
      std::vector<cdouble> rv;
      for (std::size_t i = 0; i < n; ++i) {
        ev.push_back(sample_sector_eigenvalue(rng, p));
        rv.push_back(sample_root_eigenvalue(rng));
      }
      const TestMatrix ts = make_test_matrix(SpectrumSpec{ev, p, 1000 + n});
      const TestMatrix tr = make_test_matrix(SpectrumSpec{rv, p, 2000 + n});
      const IterConfig cfg{1, 1, p};
      const MatIterResult s = sector_iterate(ts.a, cfg);
      ASSERT_TRUE(s.converged);
      EXPECT_LT(relative_error(s.result, ts.oracle_sector), 1e-8);
      const MatIterResult x = pth_root_iterate(tr.a, cfg);
      ASSERT_TRUE(x.converged);
      EXPECT_LT(relative_error(x.result, tr.oracle_root), 1e-8);
      EXPECT_LE(commutator_defect(ts.a, s.result), 1e-10 * frobenius_norm(ts.a) * frobenius_norm(s.result));
      EXPECT_LE(commutator_defect(tr.a, x.result), 1e-10 * frobenius_norm(tr.a) * frobenius_norm(x.result));
    }
}

// On normal matrices the spectral-norm residual obeys the scalar bound
// eigenvalue-wise: ||I - X_{l+1}^p||_2 <= ||I - X_l^p||_2^{k+m+1}.
TEST(MatrixOracle, ResidualMonotonicityOnNormalMatrices) {
  std::mt19937_64 rng(23);
  const unsigned pairs[][2] = {{0, 1}, {1, 1}, {2, 2}};
  for (const auto& km : pairs)
    for (unsigned p : {2u, 3u}) {
      std::vector<cdouble> ev;
      for (int i = 0; i < 4; ++i) ev.push_back(sample_sector_eigenvalue(rng, p));
      const TestMatrix t = make_test_matrix(SpectrumSpec{ev, p, 5, Similarity::unitary});
      const IterConfig cfg{km[0], km[1], p};
      const IterationCoefficients c = IterationCoefficients::from(cfg);
      CMatrix x = t.a;
      double r = spectral_norm(CMatrix::identity(4) - mat_pow(x, p));
      for (std::size_t l = 1; l < 20 && r > cfg.tol; ++l) {
        x = sector_step(x, c, l);
        const double next = spectral_norm(CMatrix::identity(4) - mat_pow(x, p));
        const double bound = std::pow(r, cfg.order());
        if (!(next <= cfg.tol && bound < cfg.tol)) EXPECT_LE(next, bound * (1 + 1e-9)) << l;
        r = next;
      }
    }
}

namespace {

// Rebuilds the seeded sector/root test pair used by the matrix acceptance sweep.
std::pair<TestMatrix, TestMatrix> seeded_pair(unsigned n, unsigned p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SpectrumSpec ss{{}, p, seed};
  for (unsigned i = 0; i < n; ++i) ss.eigenvalues.push_back(sample_sector_eigenvalue(rng, p));
  SpectrumSpec rs{{}, p, seed + 1000};
  TestMatrix s = make_test_matrix(ss);
  for (unsigned i = 0; i < n; ++i) rs.eigenvalues.push_back(sample_root_eigenvalue(rng));
  return {s, make_test_matrix(rs)};
}

}  // namespace

TEST(RoundingFloor, SectorStallsAboveTolButWithinBound) {
  const auto [s, r] = seeded_pair(6, 3, 79);
  const IterConfig cfg{0, 1, 3};
  const MatIterResult res = sector_iterate(s.a, cfg);
  ASSERT_TRUE(res.converged);
  EXPECT_TRUE(res.at_floor);
  EXPECT_GT(res.residual_history.back(), cfg.tol);
  EXPECT_LE(frobenius_norm(mat_pow(res.result, 3) - CMatrix::identity(6)), 10 * 6 * cfg.tol);
  EXPECT_LT(relative_error(res.result, s.oracle_sector), 1e-12);
  EXPECT_EQ(res.residual_history.size(), res.steps + 1);
}

TEST(RoundingFloor, RootStopsBeforeDrifting) {
  const auto [s, r] = seeded_pair(7, 5, 80);
  const IterConfig cfg{0, 1, 5};
  const MatIterResult res = pth_root_iterate(r.a, cfg);
  ASSERT_TRUE(res.converged);
  EXPECT_TRUE(res.at_floor);
  EXPECT_LT(res.steps, 10u);
  EXPECT_LT(relative_error(res.result, r.oracle_root), 1e-12);
  // Without the floor rule this start drifts away from the root.
  const MatIterResult forced = pth_root_iterate(r.a, IterConfig{0, 1, 5, 64, 1e-300});
  EXPECT_GT(relative_error(forced.result, r.oracle_root), 1e-8);
}
