#include "fracspec/ifs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracspec/parallel.hpp"
#include "fracspec/random.hpp"

namespace fracspec {

bool Box::contains(const RealVec& x, double slack) const {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
  }
  return true;
}

IfsView::IfsView(RatMat matrix, std::vector<RatVec> digits)
    : matrix_(std::move(matrix)), digits_(std::move(digits)) {
  if (matrix_.dim() == 0) throw std::invalid_argument("IFS matrix is empty");
  if (digits_.empty()) throw std::invalid_argument("IFS needs at least one digit");
  for (const auto& dgt : digits_) {
    if (dgt.size() != matrix_.dim()) {
      throw std::invalid_argument("digit " + to_string(dgt) + " has dimension " + std::to_string(dgt.size()) +
                                  ", expected " + std::to_string(matrix_.dim()));
    }
  }
  inverse_ = inverse_exact(matrix_);
  inverse_real_ = to_real(inverse_);
  digits_real_ = to_real(digits_);
  contraction_ = operator_norm(inverse_real_);

  double max_digit = 0.0;
  for (const auto& dgt : digits_real_) max_digit = std::max(max_digit, norm2(dgt));

  // Find a block length with ||M^{-k}|| < 1; it exists for expansive M.
  RealMat power = inverse_real_;
  double prefactor = 1.0;  // max_{0<=j<k} ||M^{-j}||
  double digit_sum = 0.0;  // sum_{1<=j<=k} ||M^{-j}||
  constexpr unsigned kMaxBlock = 256;
  for (block_ = 1; block_ <= kMaxBlock; ++block_) {
    const double norm = operator_norm(power);
    digit_sum += norm;
    if (norm < 1.0) {
      block_factor_ = norm;
      break;
    }
    prefactor = std::max(prefactor, norm);
    power = power * inverse_real_;
  }
  if (block_ > kMaxBlock) {
    throw std::invalid_argument("IFS matrix is not expansive: no contracting power of its inverse");
  }
  tail_factor_ = prefactor * block_ / (1.0 - block_factor_);
  if (contraction_ < 1.0) {
    radius_ = contraction_ * max_digit / (1.0 - contraction_);
  } else {
    radius_ = digit_sum * max_digit / (1.0 - block_factor_);
  }
}

Box IfsView::bounding_box(double inflate) const {
  const double a = radius_ * (1.0 + inflate);
  // A degenerate attractor (single point at the origin) still gets a box.
  const double half = a > 0.0 ? a : 1.0;
  return Box{RealVec(dim(), -half), RealVec(dim(), half)};
}

void IfsView::check_digit(std::size_t digit) const {
  if (digit >= digits_.size()) {
    throw std::out_of_range("digit index " + std::to_string(digit) + " out of range (N=" +
                            std::to_string(digits_.size()) + ")");
  }
}

RatVec IfsView::tau(std::size_t digit, const RatVec& x) const {
  check_digit(digit);
  return inverse_ * (x + digits_[digit]);
}

RealVec IfsView::tau(std::size_t digit, const RealVec& x) const {
  check_digit(digit);
  return inverse_real_ * (x + digits_real_[digit]);
}

RealVec IfsView::apply_word(const Word& w, RealVec x) const {
  for (auto letter : w) x = tau(letter, x);
  return x;
}

TruncatedPoint pi_truncated(const IfsView& view, const Word& word) {
  TruncatedPoint out{RatVec(view.dim()), 0.0};
  RatMat power = view.inverse();
  RealMat power_real = view.inverse_real();
  for (auto letter : word) {
    if (letter >= view.size()) throw std::out_of_range("word letter out of range");
    out.point += power * view.digits()[letter];
    power = power * view.inverse();
    power_real = power_real * view.inverse_real();
  }
  // The tail is M^{-n} applied to a point of the attractor.
  out.error_bound = word.empty() ? view.attractor_radius()
                                 : operator_norm(power_real * to_real(view.matrix())) * view.attractor_radius();
  return out;
}

std::vector<RealVec> chaos_game(const IfsView& view, std::size_t n_samples, std::uint64_t seed,
                                unsigned threads) {
  if (n_samples == 0) throw std::invalid_argument("chaos_game: n_samples must be >= 1");
  constexpr std::size_t kBlock = 4096;
  // Burn-in until the starting offset has shrunk below 1e-16 of the radius.
  std::size_t burn_in = 64;
  if (view.block_factor() > 0.0) {
    burn_in = static_cast<std::size_t>(
        std::ceil(view.block_length() * std::log(1e-16) / std::log(view.block_factor()))) + 8;
  }
  const std::size_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<RealVec> out(n_samples);
  parallel_for(n_blocks, threads, [&](std::size_t block) {
    Engine rng = stream_engine(seed, block);
    std::uniform_int_distribution<std::size_t> pick(0, view.size() - 1);
    RealVec x(view.dim());
    for (std::size_t i = 0; i < burn_in; ++i) x = view.tau(pick(rng), x);
    const std::size_t begin = block * kBlock;
    const std::size_t end = std::min(n_samples, begin + kBlock);
    for (std::size_t i = begin; i < end; ++i) {
      x = view.tau(pick(rng), x);
      out[i] = x;
    }
  });
  return out;
}

std::complex<double> m_eval(std::span<const RealVec> digits, const RealVec& x) {
  std::complex<double> s = 0.0;
  for (const auto& b : digits) {
    const double phase = 2.0 * std::numbers::pi * dot(b, x);
    s += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return s / std::sqrt(static_cast<double>(digits.size()));
}

std::complex<double> m_eval(std::span<const RatVec> digits, const RatVec& x) {
  std::complex<double> s = 0.0;
  for (const auto& b : digits) {
    const double phase = 2.0 * std::numbers::pi * to_double(frac_part(dot(b, x)));
    s += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return s / std::sqrt(static_cast<double>(digits.size()));
}

}  // namespace fracspec
