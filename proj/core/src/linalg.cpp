#include "fracspec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Dense>

namespace fracspec {
namespace {

Eigen::MatrixXd to_eigen(const RealMat& m) {
  Eigen::MatrixXd e(m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

RealVec to_real(const RatVec& v) {
  RealVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = to_double(v[i]);
  return r;
}

RealMat to_real(const RatMat& m) {
  RealMat r(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

std::vector<RealVec> to_real(const std::vector<RatVec>& vs) {
  std::vector<RealVec> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(to_real(v));
  return out;
}

bool is_integer(const RatVec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

bool is_integer(const RatMat& m) {
  const auto& a = m.row_major();
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return is_integer(x); });
}

double norm2(const RealVec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double operator_norm(const RealMat& m) {
  if (m.dim() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues()(0);
}

ExpansivityReport is_expansive(const RealMat& m, double ambiguity) {
  if (m.dim() == 0) throw std::invalid_argument("is_expansive: empty matrix");
  for (double x : m.row_major()) {
    if (!std::isfinite(x)) throw std::invalid_argument("is_expansive: non-finite entry");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(m), /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("is_expansive: eigenvalue solver did not converge");
  }
  ExpansivityReport rep;
  rep.min_modulus = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const std::complex<double> ev = solver.eigenvalues()(i);
    rep.eigenvalues.push_back(ev);
    rep.min_modulus = std::min(rep.min_modulus, std::abs(ev));
  }
  rep.margin = rep.min_modulus - 1.0;
  if (std::abs(rep.margin) <= ambiguity) {
    std::ostringstream msg;
    msg << "eigenvalue modulus " << rep.min_modulus << " is within " << ambiguity
        << " of the unit circle; expansivity is ambiguous";
    throw AmbiguousSpectrumError(msg.str());
  }
  rep.expansive = rep.margin > 0.0;
  return rep;
}

ExpansivityReport is_expansive(const RatMat& m, double ambiguity) {
  return is_expansive(to_real(m), ambiguity);
}

namespace {

// Reduces [m | rhs] in place; returns false when m is singular.
bool gauss_jordan(RatMat& m, std::vector<RatVec>& rhs) {
  const std::size_t d = m.dim();
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m(pivot, col) == 0) ++pivot;
    if (pivot == d) return false;
    if (pivot != col) {
      for (std::size_t j = 0; j < d; ++j) std::swap(m(pivot, j), m(col, j));
      for (auto& r : rhs) std::swap(r[pivot], r[col]);
    }
    const Rational inv = 1 / m(col, col);
    for (std::size_t j = 0; j < d; ++j) m(col, j) *= inv;
    for (auto& r : rhs) r[col] *= inv;
    for (std::size_t i = 0; i < d; ++i) {
      if (i == col || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = 0; j < d; ++j) m(i, j) -= f * m(col, j);
      for (auto& r : rhs) r[i] -= f * r[col];
    }
  }
  return true;
}

}  // namespace

RatVec solve_exact(const RatMat& m, const RatVec& v) {
  if (v.size() != m.dim()) throw std::invalid_argument("solve_exact: dimension mismatch");
  RatMat work = m;
  std::vector<RatVec> rhs{v};
  if (!gauss_jordan(work, rhs)) throw SingularMatrixError("solve_exact: matrix is non-invertible");
  return rhs.front();
}

RatMat inverse_exact(const RatMat& m) {
  const std::size_t d = m.dim();
  RatMat work = m;
  std::vector<RatVec> cols;
  for (std::size_t j = 0; j < d; ++j) {
    RatVec e(d);
    e[j] = 1;
    cols.push_back(e);
  }
  if (!gauss_jordan(work, cols)) throw SingularMatrixError("inverse_exact: matrix is non-invertible");
  RatMat inv(d);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < d; ++i) inv(i, j) = cols[j][i];
  return inv;
}

std::string to_string(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace fracspec
