#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

/// The triple (B, L, R) with S = R^T and the two IFSs it generates:
///   tau_b(x) = R^{-1}(x + b),  b in B
///   tau_l(x) = S^{-1}(x + l),  l in L
///
/// Construction rejects non-expansive R, #B != #L, empty digit sets and
/// dimension mismatches with std::invalid_argument naming the field.  The
/// Hadamard property itself is verified by check_duality.
class AffineSystem {
 public:
  AffineSystem(RatMat R, std::vector<RatVec> B, std::vector<RatVec> L, double unitarity_tol = 1e-12);

  std::size_t dim() const { return R_.dim(); }
  std::size_t size() const { return B_.size(); }

  const RatMat& R() const { return R_; }
  const RatMat& S() const { return S_; }
  const std::vector<RatVec>& B() const { return B_; }
  const std::vector<RatVec>& L() const { return L_; }
  const std::vector<RealVec>& B_real() const { return b_view_.digits_real(); }
  const std::vector<RealVec>& L_real() const { return l_view_.digits_real(); }

  /// IFS(B): tau_b(x) = R^{-1}(x + b).
  const IfsView& b_view() const { return b_view_; }
  /// IFS(L): tau_l(x) = S^{-1}(x + l).
  const IfsView& l_view() const { return l_view_; }

  double unitarity_tol() const { return unitarity_tol_; }

  /// True when R, B and L are integer valued.
  bool exact() const { return exact_; }

  bool zero_in_B() const;
  bool zero_in_L() const;

 private:
  RatMat R_;
  RatMat S_;
  std::vector<RatVec> B_;
  std::vector<RatVec> L_;
  IfsView b_view_;
  IfsView l_view_;
  double unitarity_tol_;
  bool exact_;
};

}  // namespace fracspec
