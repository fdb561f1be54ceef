#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fracspec/affine_system.hpp"
#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

enum class WStatus { unclassified, w_cycle, not_w_cycle, inconclusive };

const char* to_string(WStatus s);

/// A cycle of IFS(L) with minimal period p = word.size().
///
/// points[0] is the fixed point of tau_{l_{p-1}} o ... o tau_{l_0}, i.e. the
/// solution of (S^p - I) x = l_0 + S l_1 + ... + S^{p-1} l_{p-1}, and
/// points[k+1] = tau_{l_k}(points[k]).  Enumerated cycles use the
/// lexicographically least rotation of the word.
struct Cycle {
  Word word;
  std::vector<RatVec> points;
  WStatus status = WStatus::unclassified;

  std::size_t period() const { return word.size(); }
  bool is_w_cycle() const { return status == WStatus::w_cycle; }
  bool contains(const RatVec& x) const;
};

struct CycleEnumeration {
  std::vector<Cycle> cycles;
  /// Distinct rotation classes gave pairwise distinct cycle points.
  bool points_distinct = true;
};

/// True when w is not a power of a shorter word.
bool is_aperiodic(std::span<const std::uint32_t> w);
/// True when w is the lexicographically least of its rotations.
bool is_least_rotation(std::span<const std::uint32_t> w);

/// Builds the cycle of one word (no canonicalization, no minimality check).
Cycle make_cycle(const AffineSystem& sys, Word word);

/// Rotates word and points left by `by`.
Cycle rotated(const Cycle& c, std::size_t by);

/// One Cycle per rotation class of aperiodic words of length <= p_max, in
/// order of period and then word.  Points are exact.
CycleEnumeration enumerate_cycles(const AffineSystem& sys, unsigned p_max, unsigned threads = 1);

/// Exact test: (b - b_0).x in Z for all b in B and every cycle point.
WStatus classify_w(const Cycle& c, std::span<const RatVec> B);

/// Floating test |W_B(x) - 1| < tol at every point; deviations up to
/// inconclusive_below give WStatus::inconclusive.
WStatus classify_w(const Cycle& c, std::span<const RealVec> B, double tol = 1e-9,
                   double inconclusive_below = 1e-6);

/// Enumerates and keeps the W_B-cycles, classified exactly.
std::vector<Cycle> find_w_cycles(const AffineSystem& sys, unsigned p_max, unsigned threads = 1);

/// (B^(p), L^(p), R^p) with B^(p) = {b_0 + R b_1 + ... + R^{p-1} b_{p-1}} and
/// L^(p) = {l_0 + S l_1 + ... + S^{p-1} l_{p-1}}; digit (i_0,...,i_{p-1}) sits
/// at index sum_k i_k N^k.
AffineSystem power_system(const AffineSystem& sys, unsigned p);

}  // namespace fracspec
