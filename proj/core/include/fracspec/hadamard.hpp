#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracspec/affine_system.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

struct UnitarityReport {
  bool passes = false;
  /// Largest entry modulus of U*U - I.
  double max_deviation = 0.0;
  std::size_t n = 0;
};

/// U = N^{-1/2} (exp(2 pi i a.b))_{a in A, b in B}.
Eigen::MatrixXcd hadamard_matrix(std::span<const RealVec> A, std::span<const RealVec> B);
/// Same matrix with phases reduced mod 1 exactly before exponentiation.
Eigen::MatrixXcd hadamard_matrix(std::span<const RatVec> A, std::span<const RatVec> B);

UnitarityReport check_unitary(const Eigen::MatrixXcd& U, double tol = 1e-12);

/// Hadamard-pair test for (A, B).  Throws std::invalid_argument when #A != #B.
UnitarityReport check_pair(std::span<const RealVec> A, std::span<const RealVec> B, double tol = 1e-12);
UnitarityReport check_pair(std::span<const RatVec> A, std::span<const RatVec> B, double tol = 1e-12);

/// Kronecker product U (x) V.
Eigen::MatrixXcd tensor(const Eigen::MatrixXcd& U, const Eigen::MatrixXcd& V);

struct IntegralityReport {
  bool passes = false;
  /// True when R, B, L are integral and every b.l is an integer, which makes
  /// R^n b . l integral for all n >= 0.
  bool proven = false;
  /// Largest n checked when not proven (inclusive).
  unsigned horizon = 0;
  std::string detail;
};

struct DualityReport {
  bool passes = false;
  ExpansivityReport expansivity;
  UnitarityReport unitarity;
  IntegralityReport integrality;
  bool zero_in_B = false;
  bool zero_in_L = false;
  /// Names of the failed checks: "expansive", "hadamard_pair", "integrality".
  std::vector<std::string> failures;
};

/// Checks that (B, L, R) is in Hadamard duality: R expansive, (R^{-1}B, L) a
/// Hadamard pair, and R^n b . l in Z.  The integrality condition is proven for
/// integer data and checked exactly for n = 0..integrality_horizon otherwise.
DualityReport check_duality(const AffineSystem& sys, unsigned integrality_horizon = 16);

}  // namespace fracspec
