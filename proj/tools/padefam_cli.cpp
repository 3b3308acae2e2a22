// padefam: command-line front end for the Pade-family kernels.
//
//   padefam coeffs --k 1 --m 1 --p 2
//   padefam verify --suite all
//   padefam trace  --x0 0.5,0 --k 0 --m 1 --p 2 --format csv
//   padefam sector --matrix A.json --k 1 --m 1 --p 3 --out S.json
//   padefam root   --matrix A.json --k 1 --m 1 --p 3 --out X.json
//
// Exit codes: 0 ok, 1 verification failure, 2 usage, 3 I/O, 4 non-convergence.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padefam/padefam.hpp"

namespace {

using namespace padefam;

enum Exit : int { kOk = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3, kNoConvergence = 4 };

std::string decimal(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", r.to_double());
  return buf;
}

std::string coeff_list(const SeriesPoly& s, bool exact) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.coeffs().size(); ++i) {
    if (i) out += ", ";
    out += exact ? s.coeffs()[i].str() : decimal(s.coeffs()[i]);
  }
  return out + "]";
}

void emit(const std::optional<std::string>& path, const std::string& text) {
  if (path) io::write_file(*path, text);
  else std::cout << text;
}

struct CommonIter {
  unsigned k = 0;
  unsigned m = 1;
  unsigned p = 2;
  double tol = 1e-14;
  std::size_t max_iter = 64;

  void add_to(CLI::App* sub) {
    sub->add_option("--k", k, "numerator degree");
    sub->add_option("--m", m, "denominator degree");
    sub->add_option("--p", p, "sector index p >= 2");
    sub->add_option("--tol", tol, "stopping tolerance on the residual");
    sub->add_option("--max-iter", max_iter, "iteration cap");
  }
  IterConfig config() const {
    IterConfig cfg{k, m, p, max_iter, tol};
    cfg.validate();
    return cfg;
  }
};

int cmd_coeffs(unsigned k, unsigned m, unsigned p, const std::string& format) {
  const PadePair pade = pade_pair(k, m, p);
  const bool exact = format == "exact";
  std::cout << "[" << k << "/" << m << "] p=" << p << "\n";
  std::cout << "P: " << coeff_list(pade.P, exact) << "\n";
  std::cout << "Q: " << coeff_list(pade.Q, exact) << "\n";
  std::cout << "h(x) = " << format_iteration_function(iteration_function(pade), p) << "\n";
  return kOk;
}

int cmd_verify(const std::string& suite, const std::vector<unsigned>& g, std::size_t order, std::size_t samples,
               std::uint64_t seed) {
  verify::Options o;
  if (!g.empty()) {
    o.kmax = g[0];
    o.mmax = g[1];
    o.pmax = g[2];
    if (o.pmax < 2) throw InvalidParameters("--grid: pmax must be >= 2");
  }
  o.order = order;
  o.samples = samples;
  o.seed = seed;
  const auto results = verify::run(suite, o);
  std::size_t failed = 0;
  for (const auto& r : results) {
    failed += !r.pass;
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.suite << " " << r.check;
    if (r.p) std::cout << " k=" << r.k << " m=" << r.m << " p=" << r.p;
    std::cout << "  " << r.detail << "\n";
  }
  std::cout << results.size() << " checks, " << failed << " failed\n";
  return failed ? kVerifyFailed : kOk;
}

cdouble parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InvalidParameters("--x0 expects re,im");
  }
}

int report_matrix_failure(const MatIterResult& res) {
  std::cerr << "did not converge after " << res.steps << " steps" << (res.diverged ? " (diverged)" : "")
            << "; residual history:\n";
  for (std::size_t l = 0; l < res.residual_history.size(); ++l)
    std::cerr << "  " << l << " " << res.residual_history[l] << "\n";
  return kNoConvergence;
}

int cmd_trace(const std::optional<std::string>& x0s, const std::optional<std::string>& matrix, const std::string& kind,
              const CommonIter& it, const std::optional<std::string>& out, const std::string& format) {
  if (x0s.has_value() == matrix.has_value()) throw InvalidParameters("trace: give exactly one of --x0 or --matrix");
  const IterConfig cfg = it.config();
  const IterationCoefficients coeffs = IterationCoefficients::from(cfg);
  io::TraceFile file;
  if (x0s) {
    const cdouble x0 = parse_complex(*x0s);
    if (!in_region(x0, cfg.p))
      std::cerr << "warning: |1 - x0^p| >= 1, x0 is outside the convergence region; bounds are not asserted\n";
    file = io::trace_file(iterate(x0, cfg, coeffs), cfg);
  } else {
    const CMatrix a = io::read_matrix(*matrix);
    const bool root = kind == "root";
    const MatIterResult res = root ? pth_root_iterate(a, cfg, coeffs) : sector_iterate(a, cfg, coeffs);
    file = io::trace_file(res, cfg, root ? "matrix-root" : "matrix-sector", coeffs.alpha);
  }
  emit(out, format == "csv" ? io::trace_to_csv(file) : io::trace_to_json(file).dump(2) + "\n");
  return kOk;
}

int cmd_matrix(bool root, const std::string& matrix, const CommonIter& it, const std::optional<std::string>& out) {
  const IterConfig cfg = it.config();
  const CMatrix a = io::read_matrix(matrix);
  const MatIterResult res = root ? pth_root_iterate(a, cfg) : sector_iterate(a, cfg);
  if (!res.converged) return report_matrix_failure(res);
  std::cerr << "converged in " << res.steps << " steps, final residual " << res.residual_history.back()
            << (res.at_floor ? " (rounding floor)" : "") << "\n";
  emit(out, io::matrix_to_json(res.result).dump(2) + "\n");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pade family of iterations for the matrix sector function and the matrix p-th root"};
  app.require_subcommand(1);

  unsigned ck = 0, cm = 1, cp = 2;
  std::string cformat = "exact";
  auto* coeffs = app.add_subcommand("coeffs", "print P_km, Q_km and h_km");
  coeffs->add_option("--k", ck)->required();
  coeffs->add_option("--m", cm)->required();
  coeffs->add_option("--p", cp)->required();
  coeffs->add_option("--format", cformat)->check(CLI::IsMember({"exact", "decimal"}));

  std::string suite = "all";
  std::vector<unsigned> grid;
  std::size_t order = 30, samples = 1000;
  std::uint64_t seed = 42;
  auto* ver = app.add_subcommand("verify", "run exact identity / positivity / bound suites");
  ver->add_option("--suite", suite)->check(CLI::IsMember({"identities", "positivity", "bounds", "all"}));
  ver->add_option("--grid", grid, "kmax mmax pmax")->expected(3);
  ver->add_option("--order", order, "series truncation order");
  ver->add_option("--samples", samples, "scalar starts per (k,m,p)");
  ver->add_option("--seed", seed);

  std::optional<std::string> x0, tmatrix, tout;
  std::string tkind = "sector", tformat = "json";
  CommonIter titer;
  auto* trace = app.add_subcommand("trace", "run an iteration and write its trace");
  trace->add_option("--x0", x0, "scalar start re,im");
  trace->add_option("--matrix", tmatrix, "matrix JSON file");
  trace->add_option("--kind", tkind, "matrix iteration")->check(CLI::IsMember({"sector", "root"}));
  trace->add_option("--out", tout);
  trace->add_option("--format", tformat)->check(CLI::IsMember({"json", "csv"}));
  titer.add_to(trace);

  std::string smatrix;
  std::optional<std::string> sout;
  CommonIter siter;
  auto* sector = app.add_subcommand("sector", "matrix sector function sect_p(A)");
  sector->add_option("--matrix", smatrix)->required();
  sector->add_option("--out", sout);
  siter.add_to(sector);

  std::string rmatrix;
  std::optional<std::string> rout;
  CommonIter riter;
  auto* root = app.add_subcommand("root", "principal matrix p-th root");
  root->add_option("--matrix", rmatrix)->required();
  root->add_option("--out", rout);
  riter.add_to(root);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*coeffs) return cmd_coeffs(ck, cm, cp, cformat);
    if (*ver) return cmd_verify(suite, grid, order, samples, seed);
    if (*trace) return cmd_trace(x0, tmatrix, tkind, titer, tout, tformat);
    if (*sector) return cmd_matrix(false, smatrix, siter, sout);
    if (*root) return cmd_matrix(true, rmatrix, riter, rout);
  } catch (const InvalidParameters& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const io::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const FormatError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kIo;
  } catch (const SingularDenominator& e) {
    std::cerr << "iteration broke down: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const SingularMatrix& e) {
    std::cerr << "singular input: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFailed;
  }
  return kUsage;
}
