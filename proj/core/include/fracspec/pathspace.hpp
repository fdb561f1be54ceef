#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracspec/affine_system.hpp"
#include "fracspec/cycles.hpp"
#include "fracspec/ifs.hpp"
#include "fracspec/random.hpp"
#include "fracspec/transfer.hpp"

namespace fracspec {

/// Branch probabilities at some state do not sum to 1.
class KernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Markov kernel z -> tau_l z with probability W(tau_l z).
class BranchKernel {
 public:
  static constexpr double kZeroWeight = 1e-15;

  BranchKernel(const Weight& W, const IfsView& view, double normalization_tol = 1e-9)
      : W_(W), view_(view), tol_(normalization_tol) {}

  /// Probabilities of each branch at z (weights below kZeroWeight set to 0).
  /// Throws KernelError when they miss 1 by more than the tolerance.
  std::vector<double> probabilities(const RealVec& z) const;

  /// Draws a branch, moves z and returns the digit index.
  std::uint32_t step(RealVec& z, Engine& rng) const;

  const IfsView& view() const { return view_; }

 private:
  const Weight& W_;
  const IfsView& view_;
  double tol_;
};

/// prod_k W(tau_{w_k} ... tau_{w_1} x).
double cylinder_weight(const Weight& W, const IfsView& view, const RealVec& x, std::span<const std::uint32_t> word);

/// P_x of the paths that follow `word` and then repeat the cycle word
/// forever: cylinder weight of word . cycle^K for K large enough that further
/// repeats provably change it by less than tol.
double cycle_event_probability(const Weight& W, const IfsView& view, const RealVec& x,
                               std::span<const std::uint32_t> word, const Cycle& cycle, double tol = 1e-15);

struct PathEnsemble {
  RealVec start;
  std::size_t length = 0;
  std::uint64_t seed = 0;
  std::vector<Word> words;

  /// Empirical frequency of paths starting with `prefix`.
  double frequency(std::span<const std::uint32_t> prefix) const;
};

/// `count` paths of `length` steps from x.  Path i uses stream i / 4096 of
/// the seed, so the ensemble does not depend on `threads`.
PathEnsemble sample_paths(const Weight& W, const IfsView& view, const RealVec& x, std::size_t length,
                          std::size_t count, std::uint64_t seed, unsigned threads = 1);

struct CycleEstimate {
  double probability = 0.0;
  double std_error = 0.0;
  std::size_t hits = 0;
};

struct HEstimate {
  std::vector<CycleEstimate> per_cycle;
  double total = 0.0;
  double total_std_error = 0.0;
  double unclassified = 0.0;
  double epsilon = 0.0;
  std::size_t count = 0;
};

/// Minimum pairwise distance between all points of the cycles, over 8.  With
/// a single point, an eighth of the attractor radius of `view` is used.
double default_epsilon(std::span<const Cycle> cycles, const IfsView& view);

/// Monte Carlo h_C(x) = P_x(paths converging to C).  A path counts for C when
/// its state at the last multiple of C's period is within epsilon of a point
/// of C; everything else is unclassified.  std_error uses sqrt(q(1-q)/n) with
/// q = (hits+1)/(n+2) so that it never collapses to zero.
HEstimate estimate_h(const Weight& W, const IfsView& view, const RealVec& x, std::span<const Cycle> w_cycles,
                     std::size_t length, std::size_t count, std::uint64_t seed, unsigned threads = 1,
                     double epsilon = 0.0);

struct HClosedForm {
  double value = 0.0;
  /// Upper bound on the mass not yet accounted for: pruned cylinders plus,
  /// at the depth frontier, cylinder weight not yet assigned to a term.
  double unresolved = 0.0;
  std::size_t terms = 0;
};

/// sum over rotations c_r of the cycle and words omega of length m*p
/// (m = 0..depth) of |mu_B^(x + k_r(omega))|^2, k_r taken from c_r.  Words
/// whose last block equals the rotated cycle word are skipped, since they
/// give the same k-value as the shorter word.  Subtrees whose cylinder
/// weight falls below prune_below are cut and their weight reported.
HClosedForm h_closed_form(const AffineSystem& sys, const RatVec& x, const Cycle& cycle, unsigned depth,
                          double prune_below = 0.0, double tail_tol = 1e-10);

}  // namespace fracspec
