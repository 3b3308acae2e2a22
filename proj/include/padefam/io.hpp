#pragma once

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "padefam/cmatrix.hpp"
#include "padefam/errors.hpp"
#include "padefam/matrix_iteration.hpp"
#include "padefam/scalar_iteration.hpp"

namespace padefam::io {

using nlohmann::json;

/// Raised for unreadable or unwritable files (as opposed to FormatError).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- matrices
// {"n": int, "re": [[...]], "im": [[...]]}, row-major.

inline json matrix_to_json(const CMatrix& a) {
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < a.n(); ++i) {
    json r = json::array();
    json c = json::array();
    for (std::size_t j = 0; j < a.n(); ++j) {
      r.push_back(a(i, j).real());
      c.push_back(a(i, j).imag());
    }
    re.push_back(std::move(r));
    im.push_back(std::move(c));
  }
  return json{{"n", a.n()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline CMatrix matrix_from_json(const json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("re") || !j.contains("im"))
      throw FormatError("matrix JSON needs fields n, re, im");
    const auto n = j.at("n").get<std::int64_t>();
    if (n < 1) throw FormatError("matrix JSON: n must be >= 1");
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    const auto un = static_cast<std::size_t>(n);
    const auto check = [un](const json& rows, const char* name) {
      if (!rows.is_array() || rows.size() != un) throw FormatError(std::string("matrix JSON: ") + name + " must have n rows");
      for (const auto& row : rows)
        if (!row.is_array() || row.size() != un)
          throw FormatError(std::string("matrix JSON: ") + name + " rows must have n entries");
    };
    check(re, "re");
    check(im, "im");
    CMatrix a(un);
    for (std::size_t r = 0; r < un; ++r)
      for (std::size_t c = 0; c < un; ++c) a(r, c) = cdouble(re[r][c].get<double>(), im[r][c].get<double>());
    return CMatrix(CMatrix::Storage(a.eigen()));
  } catch (const json::exception& e) {
    throw FormatError(std::string("matrix JSON: ") + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

inline CMatrix read_matrix(const std::string& path) { return matrix_from_json(parse_json(read_file(path))); }
inline void write_matrix(const std::string& path, const CMatrix& a) { write_file(path, matrix_to_json(a).dump(2) + "\n"); }

// ------------------------------------------------------------------ traces

struct TraceStep {
  std::size_t l = 0;
  double residual = 0;
  double conjecture_bound = 0;
  double strengthened_bound = 0;
  std::optional<double> x_re;
  std::optional<double> x_im;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct TraceParams {
  unsigned k = 0;
  unsigned m = 1;
  unsigned p = 2;
  double tol = 1e-14;
  std::size_t max_iter = 64;
  friend bool operator==(const TraceParams&, const TraceParams&) = default;
};

struct TraceFile {
  std::string schema_version = "1";
  std::string kind = "scalar";  // "scalar" | "matrix-sector" | "matrix-root"
  TraceParams params;
  bool converged = false;
  std::vector<TraceStep> steps;
  friend bool operator==(const TraceFile&, const TraceFile&) = default;
};

inline TraceParams params_of(const IterConfig& cfg) { return {cfg.k, cfg.m, cfg.p, cfg.tol, cfg.max_iter}; }

inline TraceFile trace_file(const Trace& tr, const IterConfig& cfg) {
  TraceFile f;
  f.kind = "scalar";
  f.params = params_of(cfg);
  f.converged = tr.converged;
  for (const auto& s : tr.steps)
    f.steps.push_back({s.l, s.residual, s.conjecture_bound, s.strengthened_bound, s.x.real(), s.x.imag()});
  return f;
}

/// Matrix traces carry the scalar bound formulas evaluated at residual_0
/// for comparison; nothing asserts them.
inline TraceFile trace_file(const MatIterResult& res, const IterConfig& cfg, const std::string& kind, double alpha) {
  TraceFile f;
  f.kind = kind;
  f.params = params_of(cfg);
  f.converged = res.converged;
  const double r0 = res.residual_history.front();
  for (std::size_t l = 0; l < res.residual_history.size(); ++l)
    f.steps.push_back({l, res.residual_history[l], conjecture_bound(r0, cfg.order(), l),
                       strengthened_bound(r0, cfg.order(), alpha, l), std::nullopt, std::nullopt});
  return f;
}

namespace detail {
inline json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
inline double num_of(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}
}  // namespace detail

inline json trace_to_json(const TraceFile& f) {
  json steps = json::array();
  for (const auto& s : f.steps) {
    json j{{"l", s.l},
           {"residual", detail::num(s.residual)},
           {"conjecture_bound", detail::num(s.conjecture_bound)},
           {"strengthened_bound", detail::num(s.strengthened_bound)}};
    if (s.x_re) j["x_re"] = *s.x_re;
    if (s.x_im) j["x_im"] = *s.x_im;
    steps.push_back(std::move(j));
  }
  return json{{"schema_version", f.schema_version},
              {"kind", f.kind},
              {"params",
               {{"k", f.params.k}, {"m", f.params.m}, {"p", f.params.p}, {"tol", f.params.tol}, {"max_iter", f.params.max_iter}}},
              {"converged", f.converged},
              {"steps", std::move(steps)}};
}

inline TraceFile trace_from_json(const json& j) {
  try {
    TraceFile f;
    f.schema_version = j.at("schema_version").get<std::string>();
    if (f.schema_version != "1") throw FormatError("trace JSON: unsupported schema_version " + f.schema_version);
    f.kind = j.at("kind").get<std::string>();
    if (f.kind != "scalar" && f.kind != "matrix-sector" && f.kind != "matrix-root")
      throw FormatError("trace JSON: unknown kind " + f.kind);
    const auto& p = j.at("params");
    f.params = {p.at("k").get<unsigned>(), p.at("m").get<unsigned>(), p.at("p").get<unsigned>(),
                p.at("tol").get<double>(), p.at("max_iter").get<std::size_t>()};
    f.converged = j.value("converged", false);
    for (const auto& s : j.at("steps")) {
      TraceStep st{s.at("l").get<std::size_t>(), detail::num_of(s.at("residual")),
                   detail::num_of(s.at("conjecture_bound")), detail::num_of(s.at("strengthened_bound")),
                   std::nullopt, std::nullopt};
      if (s.contains("x_re")) st.x_re = s.at("x_re").get<double>();
      if (s.contains("x_im")) st.x_im = s.at("x_im").get<double>();
      f.steps.push_back(st);
    }
    return f;
  } catch (const json::exception& e) {
    throw FormatError(std::string("trace JSON: ") + e.what());
  }
}

inline std::string trace_to_csv(const TraceFile& f) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "l,residual,conjecture_bound,strengthened_bound\n";
  for (const auto& s : f.steps)
    os << s.l << ',' << s.residual << ',' << s.conjecture_bound << ',' << s.strengthened_bound << '\n';
  return os.str();
}

}  // namespace padefam::io
