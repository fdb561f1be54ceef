#include "fracspec/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracspec {
namespace {

constexpr std::size_t kMaxFactors = 100000;

}  // namespace

FourierTransform::FourierTransform(const AffineSystem& sys, double tail_tol)
    : s_inverse_(sys.l_view().inverse()),
      s_inverse_real_(sys.l_view().inverse_real()),
      digits_(sys.B()),
      digits_real_(sys.B_real()),
      tail_factor_(sys.l_view().geometric_tail_factor()),
      tail_tol_(tail_tol),
      log_budget_(std::log1p(tail_tol)) {
  if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be positive");
  for (const auto& b : digits_real_) max_digit_ = std::max(max_digit_, norm2(b));
}

bool FourierTransform::done(double y_norm) const {
  return 2.0 * std::numbers::pi * max_digit_ * tail_factor_ * y_norm < log_budget_;
}

FourierValue FourierTransform::finish(RealVec y, FourierValue out) const {
  const double n = static_cast<double>(digits_real_.size());
  for (;; y = s_inverse_real_ * y) {
    if (done(norm2(y))) break;
    if (out.factors == kMaxFactors) throw std::runtime_error("mu_hat: product did not converge");
    std::complex<double> f = 0.0;
    for (const auto& b : digits_real_) {
      const double a = 2.0 * std::numbers::pi * dot(b, y);
      f += std::complex<double>(std::cos(a), std::sin(a));
    }
    f /= n;
    ++out.factors;
    if (std::abs(f) < kZeroFactor) {
      out.value = 0.0;
      out.exact_zero = true;
      return out;
    }
    out.value *= f;
  }
  return out;
}

FourierValue FourierTransform::operator()(const RealVec& t) const { return finish(s_inverse_real_ * t, {}); }

FourierValue FourierTransform::operator()(const RatVec& t) const {
  FourierValue out;
  const double n = static_cast<double>(digits_.size());
  RatVec y = t;
  for (;;) {
    y = s_inverse_ * y;
    const RealVec yr = to_real(y);
    if (norm2(yr) <= 1.0) return finish(yr, out);
    if (out.factors == kMaxFactors) throw std::runtime_error("mu_hat: product did not converge");
    std::complex<double> f = 0.0;
    for (const auto& b : digits_) {
      const double a = 2.0 * std::numbers::pi * to_double(frac_part(dot(b, y)));
      f += std::complex<double>(std::cos(a), std::sin(a));
    }
    f /= n;
    ++out.factors;
    if (std::abs(f) < kZeroFactor) {
      out.value = 0.0;
      out.exact_zero = true;
      return out;
    }
    out.value *= f;
  }
  return out;
}

FourierValue mu_hat(const AffineSystem& sys, const RealVec& t, double tail_tol) {
  return FourierTransform(sys, tail_tol)(t);
}

FourierValue mu_hat(const AffineSystem& sys, const RatVec& t, double tail_tol) {
  return FourierTransform(sys, tail_tol)(t);
}

}  // namespace fracspec
