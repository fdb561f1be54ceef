#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fracspec/linalg.hpp"

namespace fracspec {

/// Finite word over digit indices.  Infinite words are handled as a finite
/// prefix followed by a repeated cycle word where needed.
using Word = std::vector<std::uint32_t>;

/// Axis-aligned box.
struct Box {
  RealVec lo;
  RealVec hi;

  std::size_t dim() const { return lo.size(); }
  bool contains(const RealVec& x, double slack = 0.0) const;
};

/// One affine IFS  tau_k(x) = M^{-1} (x + digit_k).
///
/// The B-system uses M = R, the L-system uses M = S = R^T.  Exact arithmetic is
/// available for every map; the floating copies exist for the hot loops.
class IfsView {
 public:
  /// Throws std::invalid_argument on empty or mis-sized digits and
  /// SingularMatrixError when M is not invertible.
  IfsView(RatMat matrix, std::vector<RatVec> digits);

  std::size_t dim() const { return matrix_.dim(); }
  std::size_t size() const { return digits_.size(); }

  const RatMat& matrix() const { return matrix_; }
  const RatMat& inverse() const { return inverse_; }
  const RealMat& inverse_real() const { return inverse_real_; }
  const std::vector<RatVec>& digits() const { return digits_; }
  const std::vector<RealVec>& digits_real() const { return digits_real_; }

  /// ||M^{-1}||_2.
  double contraction_factor() const { return contraction_; }

  /// Block length k and factor q_k = ||M^{-k}||_2 < 1 used for tail bounds;
  /// k = 1 whenever contraction_factor() < 1.
  unsigned block_length() const { return block_; }
  double block_factor() const { return block_factor_; }

  /// Upper bound on sum_{j>=0} ||M^{-j} y|| / ||y||.
  double geometric_tail_factor() const { return tail_factor_; }

  /// Radius a of a centred ball containing the attractor.  When
  /// ||M^{-1}|| < 1 this is ||M^{-1}|| D / (1 - ||M^{-1}||) with D the largest
  /// digit norm, and every tau maps the ball into itself.
  double attractor_radius() const { return radius_; }
  bool ball_is_invariant() const { return contraction_ < 1.0; }

  /// Bounding box of the attractor ball, inflated by the given fraction.
  Box bounding_box(double inflate = 0.05) const;

  RatVec tau(std::size_t digit, const RatVec& x) const;
  RealVec tau(std::size_t digit, const RealVec& x) const;

  /// Composition tau_{w_n} o ... o tau_{w_1} applied to x (w_1 acts first).
  RealVec apply_word(const Word& w, RealVec x) const;

 private:
  void check_digit(std::size_t digit) const;

  RatMat matrix_;
  RatMat inverse_;
  RealMat inverse_real_;
  std::vector<RatVec> digits_;
  std::vector<RealVec> digits_real_;
  double contraction_ = 0.0;
  unsigned block_ = 1;
  double block_factor_ = 0.0;
  double tail_factor_ = 1.0;
  double radius_ = 0.0;
};

struct TruncatedPoint {
  RatVec point;
  /// Distance bound to every infinite extension of the word.
  double error_bound = 0.0;
};

/// sum_{k=1}^{n} M^{-k} digit_{w_k}: the coding map applied to a finite word.
TruncatedPoint pi_truncated(const IfsView& view, const Word& word);

/// Samples of the invariant measure of the IFS with uniform digit choice.
/// Deterministic in (n_samples, seed) regardless of `threads`.
std::vector<RealVec> chaos_game(const IfsView& view, std::size_t n_samples, std::uint64_t seed,
                                unsigned threads = 1);

/// m_B(x) = N^{-1/2} sum_b exp(2 pi i b.x).
std::complex<double> m_eval(std::span<const RealVec> digits, const RealVec& x);

/// Same sum with every phase b.x reduced mod 1 in exact arithmetic first.
std::complex<double> m_eval(std::span<const RatVec> digits, const RatVec& x);

}  // namespace fracspec
