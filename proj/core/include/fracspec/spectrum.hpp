#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracspec/affine_system.hpp"
#include "fracspec/cycles.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

/// A point is not on the lattice where the endomorphism R_L is defined.
class LatticeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite generation of the smallest set containing -C (C the W-cycle points)
/// with S Lambda + L contained in Lambda.
struct SpectrumSet {
  /// Breadth-first order; level_of[i] is the round that produced elements[i].
  std::vector<RatVec> elements;
  std::vector<unsigned> level_of;
  std::vector<RatVec> seeds;
  unsigned level = 0;
  std::size_t cap = 0;
  bool capped = false;

  std::size_t size() const { return elements.size(); }
  /// Elements produced at rounds <= level.
  std::vector<RatVec> up_to_level(unsigned level) const;
};

SpectrumSet generate_lambda(const AffineSystem& sys, std::span<const Cycle> w_cycles, unsigned levels,
                            std::size_t cap = 100000);

/// Sorted ascending (d = 1) or lexicographically (d >= 2).
std::vector<RatVec> sorted(std::vector<RatVec> v);

/// Elements with every coordinate in [lo, hi], sorted.
std::vector<RatVec> window(std::span<const RatVec> elements, const Rational& lo, const Rational& hi);

/// d = 1: the `count` smallest nonnegative elements.
std::vector<Rational> smallest_nonnegative(std::span<const RatVec> elements, std::size_t count);

/// k(omega) = omega_0 + S omega_1 + ... + S^{m-1} omega_{m-1} - S^m x_0 for a
/// word of L-indices whose length m is a multiple of the cycle period.
RatVec k_point(const AffineSystem& sys, const Cycle& cycle, std::span<const std::uint32_t> omega);

struct GramReport {
  double max_offdiag = 0.0;
  std::size_t argmax_i = 0;
  std::size_t argmax_j = 0;
  std::size_t pairs = 0;
  std::size_t exact_zero_pairs = 0;
};

/// max |mu_B^(lambda - lambda')| over distinct pairs.
GramReport verify_orthogonality(const AffineSystem& sys, std::span<const RatVec> lambdas, double tail_tol = 1e-10,
                                unsigned threads = 1);

/// sum over lambdas of |mu_B^(x + lambda)|^2.
double completeness_sum(const AffineSystem& sys, std::span<const RatVec> lambdas, const RatVec& x,
                        double tail_tol = 1e-10);

/// Running partial sums of completeness_sum in the given order.
std::vector<double> completeness_partials(const AffineSystem& sys, std::span<const RatVec> lambdas, const RatVec& x,
                                          double tail_tol = 1e-10);

/// Lattice with spacing 1/denominators[i] along axis i.
struct Lattice {
  std::vector<BigInt> denominators;

  static Lattice integer(std::size_t d) { return Lattice{std::vector<BigInt>(d, BigInt(1))}; }
  bool contains(const RatVec& x) const;
  /// Points sum_i (k_i / den_i) e_i with |k_i| <= radius, lexicographic.
  std::vector<RatVec> window(long radius) const;
};

/// R_L(x) = tau_l(x) for the unique l that keeps the result on the lattice.
/// Throws LatticeError when x is off the lattice or the choice is not unique.
RatVec lattice_step(const AffineSystem& sys, const Lattice& lattice, const RatVec& x);

struct BasinResult {
  /// Index into the cycle list, or nullopt if no listed cycle was reached.
  std::optional<std::size_t> cycle;
  std::size_t steps = 0;
  RatVec last;
};

/// Iterates R_L from x until the orbit hits a point of one of `cycles`.
BasinResult cycle_basin(const AffineSystem& sys, const Lattice& lattice, std::span<const Cycle> cycles,
                        const RatVec& x, std::size_t max_steps = 1000);

/// True when mu_B^(a - b) vanishes (exact-zero factor or |value| < zero_tol).
bool orthogonal(const AffineSystem& sys, const RatVec& a, const RatVec& b, double tail_tol = 1e-10,
                double zero_tol = 1e-10);

/// Greedy pairwise-orthogonal family scanning candidates in order.
std::vector<RatVec> greedy_orthogonal_family(const AffineSystem& sys, std::span<const RatVec> candidates,
                                             double tail_tol = 1e-10);

/// Maximum clique of the orthogonality graph on candidates (Bron-Kerbosch
/// with pivoting); returns one maximum clique.
std::vector<RatVec> max_orthogonal_clique(const AffineSystem& sys, std::span<const RatVec> candidates,
                                          double tail_tol = 1e-10, unsigned threads = 1);

}  // namespace fracspec
