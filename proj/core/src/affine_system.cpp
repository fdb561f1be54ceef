#include "fracspec/affine_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace fracspec {
namespace {

const std::vector<RatVec>& checked_digits(const std::vector<RatVec>& B, const std::vector<RatVec>& L) {
  if (B.empty()) throw std::invalid_argument("B: digit set is empty");
  if (B.size() != L.size()) {
    throw std::invalid_argument("B/L: cardinalities differ (#B=" + std::to_string(B.size()) +
                                ", #L=" + std::to_string(L.size()) + ")");
  }
  return B;
}

RatMat checked_matrix(RatMat R) {
  if (R.dim() == 0) throw std::invalid_argument("R: matrix is empty");
  if (!is_expansive(R).expansive) throw std::invalid_argument("R: matrix is not expansive");
  return R;
}

bool contains_zero(const std::vector<RatVec>& digits) {
  return std::any_of(digits.begin(), digits.end(), [](const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
  });
}

}  // namespace

AffineSystem::AffineSystem(RatMat R, std::vector<RatVec> B, std::vector<RatVec> L, double unitarity_tol)
    : R_(checked_matrix(std::move(R))),
      S_(R_.transpose()),
      B_(checked_digits(B, L)),
      L_(std::move(L)),
      b_view_(R_, B_),
      l_view_(S_, L_),
      unitarity_tol_(unitarity_tol) {
  if (!(unitarity_tol_ > 0.0)) throw std::invalid_argument("unitarity_tol must be positive");
  exact_ = is_integer(R_) && std::all_of(B_.begin(), B_.end(), [](const RatVec& v) { return is_integer(v); }) &&
           std::all_of(L_.begin(), L_.end(), [](const RatVec& v) { return is_integer(v); });
}

bool AffineSystem::zero_in_B() const { return contains_zero(B_); }
bool AffineSystem::zero_in_L() const { return contains_zero(L_); }

}  // namespace fracspec
