#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "fracspec/affine_system.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

struct FourierValue {
  std::complex<double> value{1.0, 0.0};
  /// Set when some product factor fell below kZeroFactor; value is then 0.
  bool exact_zero = false;
  /// Number of product factors evaluated.
  std::size_t factors = 0;
};

/// Fourier transform of the invariant measure mu_B of IFS(B),
///
///   mu_B^(t) = prod_{k>=1} m_B(S^{-k} t) / sqrt(N),
///
/// truncated once the remaining factors provably change the product by less
/// than tail_tol.  Each factor deviates from 1 by at most 2 pi max|b| |S^{-k}t|
/// and those norms decay geometrically through IFS(L)'s contraction data.
class FourierTransform {
 public:
  static constexpr double kZeroFactor = 1e-13;

  explicit FourierTransform(const AffineSystem& sys, double tail_tol = 1e-10);

  FourierValue operator()(const RealVec& t) const;
  /// Exact iterates S^{-k} t, phases b.y reduced mod 1 before rounding, until
  /// |S^{-k} t| <= 1; the rest of the product is taken in floating point.
  FourierValue operator()(const RatVec& t) const;

  double tail_tol() const { return tail_tol_; }

 private:
  bool done(double y_norm) const;
  // Continues the product from y = S^{-k} t (factor k not yet applied).
  FourierValue finish(RealVec y, FourierValue out) const;

  RatMat s_inverse_;
  RealMat s_inverse_real_;
  std::vector<RatVec> digits_;
  std::vector<RealVec> digits_real_;
  double max_digit_ = 0.0;
  double tail_factor_ = 1.0;
  double tail_tol_;
  double log_budget_;
};

FourierValue mu_hat(const AffineSystem& sys, const RealVec& t, double tail_tol = 1e-10);
FourierValue mu_hat(const AffineSystem& sys, const RatVec& t, double tail_tol = 1e-10);

}  // namespace fracspec
