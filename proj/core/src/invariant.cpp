#include "fracspec/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracspec/parallel.hpp"
#include "fracspec/pathspace.hpp"
#include "fracspec/random.hpp"

namespace fracspec {

ChainSample run_chain(const Weight& W, const IfsView& view, const RealVec& x0, const ChainOptions& opt) {
  if (opt.chains == 0) throw std::invalid_argument("run_chain: chains must be >= 1");
  if (x0.size() != view.dim()) throw std::invalid_argument("run_chain: start point has wrong dimension");
  const BranchKernel kernel(W, view);
  std::vector<std::vector<RealVec>> parts(opt.chains);
  parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
    const std::size_t n = opt.steps / opt.chains + (c < opt.steps % opt.chains ? 1 : 0);
    Engine rng = stream_engine(opt.seed, c);
    RealVec z = x0;
    for (std::size_t i = 0; i < opt.burn_in; ++i) kernel.step(z, rng);
    parts[c].reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      kernel.step(z, rng);
      parts[c].push_back(z);
    }
  });
  ChainSample out;
  out.burn_in = opt.burn_in;
  out.chains = opt.chains;
  out.seed = opt.seed;
  out.states.reserve(opt.steps);
  for (auto& p : parts) {
    for (auto& s : p) out.states.push_back(std::move(s));
  }
  return out;
}

MeanEstimate batch_means(std::span<const double> values, std::size_t batches) {
  if (values.empty()) throw std::invalid_argument("batch_means: no values");
  MeanEstimate out;
  double total = 0.0;
  for (double v : values) total += v;
  out.mean = total / static_cast<double>(values.size());
  batches = std::min(batches, values.size());
  if (batches < 2) return out;
  const std::size_t size = values.size() / batches;
  std::vector<double> means(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    double s = 0.0;
    for (std::size_t i = b * size; i < (b + 1) * size; ++i) s += values[i];
    means[b] = s / static_cast<double>(size);
  }
  double m = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(batches);
  double var = 0.0;
  for (double v : means) var += (v - m) * (v - m);
  var /= static_cast<double>(batches - 1);
  out.std_error = std::sqrt(var / static_cast<double>(batches));
  return out;
}

double riesz_partial_density(double t, unsigned K) {
  if (K == 0) throw std::invalid_argument("riesz_partial_density: K must be >= 1");
  double v = 1.0 / (2.0 * std::numbers::pi);
  double scale = 1.0;
  for (unsigned k = 1; k <= K; ++k) {
    scale *= 3.0;
    v *= 1.0 + std::cos(2.0 * scale * t);
  }
  return v;
}

double riesz_coefficient(long n) {
  if (n < 0) n = -n;
  if (n == 0) return 1.0;
  // n = 1 appears on its own right-hand side with weight 1/2.
  if (n == 1) return 0.0;
  double v = 0.0;
  if (n % 3 == 0) v += riesz_coefficient(n / 3);
  if ((n + 2) % 3 == 0) v += 0.5 * riesz_coefficient((n + 2) / 3);
  if ((n - 2) % 3 == 0) v += 0.5 * riesz_coefficient((n - 2) / 3);
  return v;
}

IfsView riesz_view() {
  return IfsView(RatMat(1, {Rational(3)}), {RatVec{Rational(0)}, RatVec{Rational(1)}, RatVec{Rational(2)}});
}

Weight riesz_weight() {
  return Weight(
      [](const RealVec& x) {
        const double c = std::cos(2.0 * std::numbers::pi * x[0]);
        return 2.0 / 3.0 * c * c;
      },
      8.0 * std::numbers::pi / 3.0);
}

ChainSample riesz_chain(const ChainOptions& opt) {
  const IfsView view = riesz_view();
  const Weight W = riesz_weight();
  ChainSample s = run_chain(W, view, RealVec{0.0}, opt);
  for (auto& x : s.states) x[0] *= 2.0 * std::numbers::pi;
  return s;
}

FourierCoefficient fourier_coefficient(const ChainSample& sample, int k, std::size_t batches) {
  std::vector<double> re, im;
  re.reserve(sample.states.size());
  im.reserve(sample.states.size());
  for (const auto& s : sample.states) {
    if (s.size() != 1) throw std::invalid_argument("fourier_coefficient: needs 1-d states");
    re.push_back(std::cos(k * s[0]));
    im.push_back(-std::sin(k * s[0]));
  }
  const MeanEstimate r = batch_means(re, batches);
  const MeanEstimate i = batch_means(im, batches);
  return FourierCoefficient{{r.mean, i.mean}, r.std_error, i.std_error};
}

std::vector<std::size_t> histogram(const ChainSample& sample, std::size_t bins, double lo, double hi) {
  if (bins == 0 || !(hi > lo)) throw std::invalid_argument("histogram: need bins >= 1 and hi > lo");
  std::vector<std::size_t> counts(bins, 0);
  for (const auto& s : sample.states) {
    const double u = (s[0] - lo) / (hi - lo);
    if (u < 0.0 || u >= 1.0) continue;
    ++counts[std::min(bins - 1, static_cast<std::size_t>(u * static_cast<double>(bins)))];
  }
  return counts;
}

std::vector<double> concentration_curve(std::span<const std::size_t> counts, std::span<const double> qs) {
  std::vector<std::size_t> sorted(counts.begin(), counts.end());
  std::sort(sorted.rbegin(), sorted.rend());
  double total = 0.0;
  for (auto c : sorted) total += static_cast<double>(c);
  std::vector<double> out;
  for (double q : qs) {
    const auto take = std::min(sorted.size(),
                               static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size()))));
    double s = 0.0;
    for (std::size_t i = 0; i < take; ++i) s += static_cast<double>(sorted[i]);
    out.push_back(total > 0.0 ? s / total : 0.0);
  }
  return out;
}

InvarianceCheck invariance_check(const Weight& W, const IfsView& view, const ChainSample& sample,
                                 const std::function<double(const RealVec&)>& f, std::size_t batches) {
  std::vector<double> fv, rfv, diff;
  for (const auto& z : sample.states) {
    double rf = 0.0;
    for (std::size_t l = 0; l < view.size(); ++l) {
      const RealVec y = view.tau(l, z);
      rf += W(y) * f(y);
    }
    const double v = f(z);
    fv.push_back(v);
    rfv.push_back(rf);
    diff.push_back(rf - v);
  }
  InvarianceCheck out;
  out.mean_f = batch_means(fv, batches).mean;
  out.mean_rf = batch_means(rfv, batches).mean;
  out.std_error = batch_means(diff, batches).std_error;
  return out;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

}  // namespace fracspec
