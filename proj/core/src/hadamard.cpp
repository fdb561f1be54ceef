#include "fracspec/hadamard.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace fracspec {
namespace {

std::complex<double> unit_phase(double turns) {
  const double a = 2.0 * std::numbers::pi * turns;
  return {std::cos(a), std::sin(a)};
}

template <class V>
void check_sizes(std::span<const V> A, std::span<const V> B) {
  if (A.size() != B.size()) {
    throw std::invalid_argument("Hadamard pair needs #A = #B (got " + std::to_string(A.size()) + " and " +
                                std::to_string(B.size()) + ")");
  }
  if (A.empty()) throw std::invalid_argument("Hadamard pair needs nonempty sets");
}

}  // namespace

Eigen::MatrixXcd hadamard_matrix(std::span<const RealVec> A, std::span<const RealVec> B) {
  check_sizes(A, B);
  const auto n = static_cast<Eigen::Index>(A.size());
  Eigen::MatrixXcd U(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) U(i, j) = scale * unit_phase(dot(A[i], B[j]));
  return U;
}

Eigen::MatrixXcd hadamard_matrix(std::span<const RatVec> A, std::span<const RatVec> B) {
  check_sizes(A, B);
  const auto n = static_cast<Eigen::Index>(A.size());
  Eigen::MatrixXcd U(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) U(i, j) = scale * unit_phase(to_double(frac_part(dot(A[i], B[j]))));
  return U;
}

UnitarityReport check_unitary(const Eigen::MatrixXcd& U, double tol) {
  if (U.rows() != U.cols()) throw std::invalid_argument("check_unitary: matrix is not square");
  const Eigen::MatrixXcd G = U.adjoint() * U - Eigen::MatrixXcd::Identity(U.rows(), U.cols());
  UnitarityReport rep;
  rep.n = static_cast<std::size_t>(U.rows());
  rep.max_deviation = G.size() == 0 ? 0.0 : G.cwiseAbs().maxCoeff();
  rep.passes = rep.max_deviation < tol;
  return rep;
}

UnitarityReport check_pair(std::span<const RealVec> A, std::span<const RealVec> B, double tol) {
  return check_unitary(hadamard_matrix(A, B), tol);
}

UnitarityReport check_pair(std::span<const RatVec> A, std::span<const RatVec> B, double tol) {
  return check_unitary(hadamard_matrix(A, B), tol);
}

Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V) {
  Eigen::MatrixXcd K(U.rows() * V.rows(), U.cols() * V.cols());
  for (Eigen::Index i = 0; i < U.rows(); ++i)
    for (Eigen::Index j = 0; j < U.cols(); ++j) K.block(i * V.rows(), j * V.cols(), V.rows(), V.cols()) = U(i, j) * V;
  return K;
}

DualityReport check_duality(const AffineSystem& sys, unsigned integrality_horizon) {
  DualityReport rep;
  rep.zero_in_B = sys.zero_in_B();
  rep.zero_in_L = sys.zero_in_L();

  rep.expansivity = is_expansive(sys.R());
  if (!rep.expansivity.expansive) rep.failures.emplace_back("expansive");

  std::vector<RatVec> scaled;
  scaled.reserve(sys.size());
  for (const auto& b : sys.B()) scaled.push_back(sys.b_view().inverse() * b);
  rep.unitarity = check_pair(std::span<const RatVec>(scaled), std::span<const RatVec>(sys.L()), sys.unitarity_tol());
  if (!rep.unitarity.passes) rep.failures.emplace_back("hadamard_pair");

  auto& integ = rep.integrality;
  bool dots_integral = true;
  for (const auto& b : sys.B())
    for (const auto& l : sys.L()) dots_integral = dots_integral && is_integer(dot(b, l));
  if (sys.exact() && dots_integral) {
    integ.proven = true;
    integ.passes = true;
    integ.detail = "R, B, L integral: R^n b . l in Z for all n >= 0";
  } else {
    integ.horizon = integrality_horizon;
    integ.passes = true;
    std::vector<RatVec> powered = sys.B();
    for (unsigned n = 0; n <= integrality_horizon && integ.passes; ++n) {
      for (const auto& rb : powered) {
        for (const auto& l : sys.L()) {
          if (!is_integer(dot(rb, l))) {
            integ.passes = false;
            integ.detail = "R^" + std::to_string(n) + " b . l = " + to_string(dot(rb, l)) + " is not an integer";
            break;
          }
        }
        if (!integ.passes) break;
      }
      for (auto& rb : powered) rb = sys.R() * rb;
    }
    if (integ.passes) integ.detail = "checked exactly for n = 0.." + std::to_string(integrality_horizon);
  }
  if (!integ.passes) rep.failures.emplace_back("integrality");

  rep.passes = rep.failures.empty();
  return rep;
}

}  // namespace fracspec
