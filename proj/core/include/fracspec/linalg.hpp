#pragma once

// Small dense vectors and matrices over Rational (exact path) or double
// (floating path).  Dimensions in this library are tiny (d <= 8), so the
// containers are plain row-major vectors with value semantics.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracspec/rational.hpp"

namespace fracspec {

/// Thrown by exact solves when the matrix has no inverse over the rationals.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an eigenvalue modulus is too close to 1 to classify.
class AmbiguousSpectrumError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <class T>
class Vec {
 public:
  Vec() = default;
  explicit Vec(std::size_t d, const T& fill = T(0)) : c_(d, fill) {}
  Vec(std::initializer_list<T> init) : c_(init) {}
  explicit Vec(std::vector<T> coords) : c_(std::move(coords)) {}

  std::size_t size() const { return c_.size(); }
  const T& operator[](std::size_t i) const { return c_[i]; }
  T& operator[](std::size_t i) { return c_[i]; }
  const std::vector<T>& coords() const { return c_; }
  auto begin() const { return c_.begin(); }
  auto end() const { return c_.end(); }

  Vec& operator+=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Vec& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator-(Vec a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Vec operator*(const T& s, Vec a) { return a *= s; }
  friend bool operator==(const Vec& a, const Vec& b) { return a.c_ == b.c_; }
  friend bool operator<(const Vec& a, const Vec& b) { return a.c_ < b.c_; }

 private:
  void check_same(const Vec& o) const {
    if (o.size() != size()) throw std::invalid_argument("vector dimension mismatch");
  }
  std::vector<T> c_;
};

template <class T>
class Mat {
 public:
  Mat() = default;
  explicit Mat(std::size_t d, const T& fill = T(0)) : d_(d), a_(d * d, fill) {}

  /// Builds from a row-major list of d*d entries; throws if not square.
  Mat(std::size_t d, std::vector<T> row_major) : d_(d), a_(std::move(row_major)) {
    if (a_.size() != d_ * d_) {
      throw std::invalid_argument("matrix needs " + std::to_string(d_ * d_) + " entries, got " +
                                  std::to_string(a_.size()));
    }
  }

  static Mat from_rows(const std::vector<std::vector<T>>& rows) {
    Mat m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw std::invalid_argument("matrix is not square");
      for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static Mat identity(std::size_t d) {
    Mat m(d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t dim() const { return d_; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
  const std::vector<T>& row_major() const { return a_; }

  Mat transpose() const {
    Mat t(d_);
    for (std::size_t i = 0; i < d_; ++i)
      for (std::size_t j = 0; j < d_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    x.check_same(y);
    Mat r(x.d_);
    for (std::size_t i = 0; i < x.d_; ++i)
      for (std::size_t k = 0; k < x.d_; ++k) {
        if (x(i, k) == T(0)) continue;
        for (std::size_t j = 0; j < x.d_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend Vec<T> operator*(const Mat& m, const Vec<T>& v) {
    if (v.size() != m.d_) throw std::invalid_argument("matrix/vector dimension mismatch");
    Vec<T> r(m.d_);
    for (std::size_t i = 0; i < m.d_; ++i)
      for (std::size_t j = 0; j < m.d_; ++j) r[i] += m(i, j) * v[j];
    return r;
  }
  friend Mat operator+(Mat x, const Mat& y) {
    x.check_same(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    x.check_same(y);
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend bool operator==(const Mat& x, const Mat& y) { return x.d_ == y.d_ && x.a_ == y.a_; }

 private:
  void check_same(const Mat& o) const {
    if (o.d_ != d_) throw std::invalid_argument("matrix dimension mismatch");
  }
  std::size_t d_ = 0;
  std::vector<T> a_;
};

using RatVec = Vec<Rational>;
using RealVec = Vec<double>;
using RatMat = Mat<Rational>;
using RealMat = Mat<double>;

template <class T>
T dot(const Vec<T>& a, const Vec<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  T s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// p-th power by repeated squaring; p >= 1.
template <class T>
Mat<T> mat_pow(const Mat<T>& m, unsigned p) {
  if (p == 0) throw std::invalid_argument("mat_pow: exponent must be >= 1");
  Mat<T> result = m;
  Mat<T> base = m;
  --p;
  while (p > 0) {
    if (p & 1u) result = result * base;
    base = base * base;
    p >>= 1u;
  }
  return result;
}

RealVec to_real(const RatVec& v);
RealMat to_real(const RatMat& m);
std::vector<RealVec> to_real(const std::vector<RatVec>& vs);

bool is_integer(const RatVec& v);
bool is_integer(const RatMat& m);

double norm2(const RealVec& v);

/// Spectral norm (largest singular value).
double operator_norm(const RealMat& m);

struct ExpansivityReport {
  bool expansive = false;
  /// Smallest eigenvalue modulus.
  double min_modulus = 0.0;
  /// min_modulus - 1; negative when some eigenvalue lies inside the closed unit disk.
  double margin = 0.0;
  std::vector<std::complex<double>> eigenvalues;
};

/// Expansive means every eigenvalue has modulus > 1.  Eigenvalues within
/// `ambiguity` of the unit circle raise AmbiguousSpectrumError.
ExpansivityReport is_expansive(const RealMat& m, double ambiguity = 1e-9);
ExpansivityReport is_expansive(const RatMat& m, double ambiguity = 1e-9);

/// Exact Gauss-Jordan solve of m x = v.  Throws SingularMatrixError.
RatVec solve_exact(const RatMat& m, const RatVec& v);
RatMat inverse_exact(const RatMat& m);

std::string to_string(const RatVec& v);

}  // namespace fracspec
