#include "fracspec/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracspec/parallel.hpp"
#include "fracspec/random.hpp"

namespace fracspec {
namespace {

constexpr std::size_t kChunk = 1024;

bool in_ball(const IfsView& view, const RealVec& x) {
  return norm2(x) <= view.attractor_radius() * (1.0 + 1e-12);
}

RealVec clamp_to(const Box& box, RealVec x) {
  for (std::size_t a = 0; a < x.size(); ++a) x[a] = std::clamp(x[a], box.lo[a], box.hi[a]);
  return x;
}

}  // namespace

Weight Weight::from_digits(std::vector<RealVec> digits) {
  if (digits.empty()) throw std::invalid_argument("Weight::from_digits: empty digit set");
  double max_digit = 0.0;
  for (const auto& b : digits) max_digit = std::max(max_digit, norm2(b));
  const double n = static_cast<double>(digits.size());
  return Weight(
      [digits = std::move(digits), n](const RealVec& x) {
        double re = 0.0;
        double im = 0.0;
        for (const auto& b : digits) {
          const double a = 2.0 * std::numbers::pi * dot(b, x);
          re += std::cos(a);
          im += std::sin(a);
        }
        return (re * re + im * im) / (n * n);
      },
      4.0 * std::numbers::pi * max_digit);
}

Weight Weight::constant(double c) {
  if (c < 0.0) throw std::invalid_argument("Weight::constant: negative weight");
  return Weight([c](const RealVec&) { return c; }, 0.0);
}

GridFunction make_grid(const IfsView& view, std::size_t per_axis) {
  if (per_axis == 0) per_axis = view.dim() == 1 ? 4096 : view.dim() == 2 ? 512 : 64;
  return GridFunction(view.bounding_box(0.05), std::vector<std::size_t>(view.dim(), per_axis));
}

GridFunction ruelle_apply(const Weight& W, const IfsView& view, const GridFunction& f, unsigned threads) {
  if (f.dim() != view.dim()) throw std::invalid_argument("ruelle_apply: grid/IFS dimension mismatch");
  GridFunction out(f.box(), f.resolution());
  const std::size_t n_chunks = (f.size() + kChunk - 1) / kChunk;
  parallel_for(n_chunks, threads, [&](std::size_t chunk) {
    const std::size_t end = std::min(f.size(), (chunk + 1) * kChunk);
    for (std::size_t i = chunk * kChunk; i < end; ++i) {
      const RealVec x = f.node(i);
      const bool interior = in_ball(view, x);
      double acc = 0.0;
      for (std::size_t l = 0; l < view.size(); ++l) {
        RealVec y = view.tau(l, x);
        const double w = W(y);
        if (w == 0.0) continue;
        if (!interior) y = clamp_to(f.box(), std::move(y));
        acc += w * f.interpolate(y);
      }
      out[i] = acc;
    }
  });
  return out;
}

double check_qmf(const Weight& W, const IfsView& view, std::size_t n_probe, std::uint64_t seed) {
  const Box box = view.bounding_box(0.05);
  Engine rng = stream_engine(seed, 0);
  double worst = 0.0;
  for (std::size_t k = 0; k < n_probe; ++k) {
    RealVec x(view.dim());
    for (std::size_t a = 0; a < x.size(); ++a) x[a] = box.lo[a] + (box.hi[a] - box.lo[a]) * uniform01(rng);
    double s = 0.0;
    for (std::size_t l = 0; l < view.size(); ++l) s += W(view.tau(l, x));
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

GridFunction cesaro(const Weight& W, const IfsView& view, const GridFunction& f, std::size_t n_iter,
                    Averaging mode, unsigned threads) {
  if (n_iter == 0) throw std::invalid_argument("cesaro: n_iter must be >= 1");
  if (mode == Averaging::power) {
    GridFunction g = f;
    for (std::size_t k = 0; k < n_iter; ++k) g = ruelle_apply(W, view, g, threads);
    return g;
  }
  GridFunction acc = f;
  GridFunction g = f;
  for (std::size_t k = 1; k < n_iter; ++k) {
    g = ruelle_apply(W, view, g, threads);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += g[i];
  }
  const double inv = 1.0 / static_cast<double>(n_iter);
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] *= inv;
  return acc;
}

double harmonic_defect(const Weight& W, const IfsView& view, const GridFunction& h, unsigned threads) {
  const GridFunction rh = ruelle_apply(W, view, h, threads);
  double worst = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h.on_boundary(i) || !in_ball(view, h.node(i))) continue;
    worst = std::max(worst, std::abs(rh[i] - h[i]));
  }
  return worst;
}

}  // namespace fracspec
