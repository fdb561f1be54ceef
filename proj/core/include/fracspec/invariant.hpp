#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"
#include "fracspec/transfer.hpp"

namespace fracspec {

struct ChainOptions {
  std::size_t steps = 1000000;
  std::size_t burn_in = 1000;
  std::uint64_t seed = 0;
  /// Independent chains; steps are split evenly between them.
  std::size_t chains = 1;
  unsigned threads = 1;
};

/// States of the chain x -> tau_l x with probability W(tau_l x), burn-in
/// removed, chains concatenated in order.
struct ChainSample {
  std::vector<RealVec> states;
  std::size_t burn_in = 0;
  std::size_t chains = 1;
  std::uint64_t seed = 0;
};

ChainSample run_chain(const Weight& W, const IfsView& view, const RealVec& x0, const ChainOptions& opt);

struct MeanEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean with batch-means standard error (`batches` contiguous batches).
MeanEstimate batch_means(std::span<const double> values, std::size_t batches = 32);

/// (1/2pi) prod_{k=1..K} (1 + cos(2 3^k t)).
double riesz_partial_density(double t, unsigned K);

/// Fourier coefficients of the stationary law of riesz_chain, from the
/// invariance relation nu^(n) = [3|n] nu^(n/3) + (1/2)[3|n+2] nu^((n+2)/3)
/// + (1/2)[3|n-2] nu^((n-2)/3), nu^(0) = 1.  This is the product over k >= 0
/// of (1 + cos(2 3^k t)); riesz_partial_density starts at k = 1.
double riesz_coefficient(long n);

/// The scale-3 Riesz system in x = t / 2pi: tau_j(x) = (x + j)/3, j = 0,1,2,
/// with W(x) = (2/3) cos^2(2 pi x).
IfsView riesz_view();
Weight riesz_weight();

/// Chain on the circle for the Riesz weight; states are t in [0, 2pi).
ChainSample riesz_chain(const ChainOptions& opt);

struct FourierCoefficient {
  std::complex<double> value;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
};

/// Empirical mean of exp(-i k t) over 1-d states t.
FourierCoefficient fourier_coefficient(const ChainSample& sample, int k, std::size_t batches = 32);

/// Bin counts of 1-d states over [lo, hi).
std::vector<std::size_t> histogram(const ChainSample& sample, std::size_t bins, double lo, double hi);

/// For each q, the fraction of mass carried by the heaviest ceil(q * bins) bins.
std::vector<double> concentration_curve(std::span<const std::size_t> counts, std::span<const double> qs);

struct InvarianceCheck {
  double mean_f = 0.0;
  double mean_rf = 0.0;
  /// Batch-means error of the difference R_W f - f along the chain.
  double std_error = 0.0;
};

/// Compares the chain averages of f and R_W f.
InvarianceCheck invariance_check(const Weight& W, const IfsView& view, const ChainSample& sample,
                                 const std::function<double(const RealVec&)>& f, std::size_t batches = 32);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

}  // namespace fracspec
