#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "padefam/errors.hpp"
#include "padefam/scalar_iteration.hpp"

namespace padefam {

/// Dense square complex matrix with finite entries.
class CMatrix {
 public:
  using Storage = Eigen::MatrixXcd;

  explicit CMatrix(std::size_t n = 1) : a_(Storage::Zero(check_dim(n), check_dim(n))) {}
  explicit CMatrix(Storage a) : a_(std::move(a)) {
    if (a_.rows() != a_.cols() || a_.rows() < 1) throw FormatError("CMatrix: matrix must be square with n >= 1");
    if (!a_.allFinite()) throw FormatError("CMatrix: non-finite entry");
  }

  static CMatrix identity(std::size_t n) { return CMatrix(Storage(Storage::Identity(check_dim(n), check_dim(n)))); }
  static CMatrix diagonal(const std::vector<cdouble>& d) {
    CMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t n() const noexcept { return static_cast<std::size_t>(a_.rows()); }
  cdouble& operator()(std::size_t i, std::size_t j) { return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
  cdouble operator()(std::size_t i, std::size_t j) const {
    return a_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  const Storage& eigen() const noexcept { return a_; }

  friend CMatrix operator+(const CMatrix& a, const CMatrix& b) { return CMatrix(Storage(a.a_ + b.a_)); }
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b) { return CMatrix(Storage(a.a_ - b.a_)); }
  friend CMatrix operator*(cdouble s, const CMatrix& a) { return CMatrix(Storage(s * a.a_)); }

 private:
  static Eigen::Index check_dim(std::size_t n) {
    if (n < 1) throw FormatError("CMatrix: dimension must be >= 1");
    return static_cast<Eigen::Index>(n);
  }
  Storage a_;
};

inline void require_same_dim(const CMatrix& a, const CMatrix& b) {
  if (a.n() != b.n()) throw InvalidParameters("matrix dimensions differ");
}

inline CMatrix mat_mul(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  return CMatrix(CMatrix::Storage(a.eigen() * b.eigen()));
}

inline CMatrix mat_pow(const CMatrix& a, unsigned e) {
  return power_by_squaring(a, e, CMatrix::identity(a.n()), [](const CMatrix& x, const CMatrix& y) { return mat_mul(x, y); });
}

inline double frobenius_norm(const CMatrix& a) { return a.eigen().norm(); }
inline double spectral_norm(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix::Storage> svd(a.eigen());
  return svd.singularValues()(0);
}

/// Solves A X = B by LU with partial pivoting. Throws SingularMatrix when a
/// pivot falls below 1e-13 times the largest entry magnitude of A.
inline CMatrix lu_solve(const CMatrix& a, const CMatrix& b) {
  require_same_dim(a, b);
  const Eigen::PartialPivLU<CMatrix::Storage> lu(a.eigen());
  const double scale = a.eigen().cwiseAbs().maxCoeff();
  const auto& packed = lu.matrixLU();
  for (Eigen::Index i = 0; i < packed.rows(); ++i)
    if (!(scale > 0.0) || !(std::abs(packed(i, i)) >= 1e-13 * scale))
      throw SingularMatrix("lu_solve: matrix is numerically singular");
  CMatrix::Storage x = lu.solve(b.eigen());
  if (!x.allFinite()) throw SingularMatrix("lu_solve: non-finite solution");
  return CMatrix(std::move(x));
}

inline CMatrix inverse(const CMatrix& a) { return lu_solve(a, CMatrix::identity(a.n())); }

/// sum_i c_i T^i by Horner in the matrix argument.
inline CMatrix horner(const std::vector<double>& c, const CMatrix& t) {
  const std::size_t n = t.n();
  CMatrix acc = CMatrix::identity(n);
  acc = cdouble(c.back()) * acc;
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = mat_mul(acc, t) + cdouble(c[i]) * CMatrix::identity(n);
  return acc;
}

/// 2-norm condition number.
inline double condition_number(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix::Storage> svd(a.eigen());
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace padefam
