// Builds a 4x4 matrix with a known spectrum, runs the [1/1] (Halley)
// sector iteration for p = 3 and compares against V sect_3(D) V^{-1}.

#include <iostream>

#include "padefam/padefam.hpp"

int main() {
  using namespace padefam;
  const unsigned p = 3;
  SpectrumSpec spec;
  spec.p = p;
  spec.eigenvalues = {cdouble(0.8, 0.1), cdouble(-0.6, 0.9), cdouble(-0.5, -1.0), cdouble(1.2, 0.0)};
  spec.similarity_seed = 7;
  const TestMatrix tm = make_test_matrix(spec);

  const IterConfig cfg{1, 1, p, 64, 1e-13};
  const MatIterResult res = sector_iterate(tm.a, cfg);
  std::cout << "cond(V) = " << tm.cond_v << "\n";
  for (std::size_t l = 0; l < res.residual_history.size(); ++l)
    std::cout << "step " << l << "  ||I - X^p||_F/sqrt(n) = " << res.residual_history[l] << "\n";
  std::cout << "relative error vs oracle: " << relative_error(res.result, tm.oracle_sector) << "\n";
  return res.converged ? 0 : 1;
}
