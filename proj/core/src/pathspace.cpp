#include "fracspec/pathspace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fracspec/fourier.hpp"
#include "fracspec/parallel.hpp"

namespace fracspec {
namespace {

constexpr std::size_t kBlock = 4096;

double distance(const RealVec& a, const RealVec& b) { return norm2(a - b); }

}  // namespace

std::vector<double> BranchKernel::probabilities(const RealVec& z) const {
  std::vector<double> p(view_.size());
  double total = 0.0;
  for (std::size_t l = 0; l < p.size(); ++l) {
    const double w = W_(view_.tau(l, z));
    p[l] = w < kZeroWeight ? 0.0 : w;
    total += p[l];
  }
  if (!(std::abs(total - 1.0) <= tol_)) {
    std::ostringstream msg;
    msg << "branch probabilities sum to " << total << " at a state; the weight is not normalized (QMF fails)";
    throw KernelError(msg.str());
  }
  return p;
}

std::uint32_t BranchKernel::step(RealVec& z, Engine& rng) const {
  const std::vector<double> p = probabilities(z);
  double total = 0.0;
  for (double v : p) total += v;
  double u = uniform01(rng) * total;
  std::uint32_t pick = 0;
  for (; pick + 1 < p.size(); ++pick) {
    if (p[pick] > 0.0 && u < p[pick]) break;
    u -= p[pick];
  }
  while (p[pick] == 0.0 && pick > 0) --pick;
  z = view_.tau(pick, z);
  return pick;
}

double cylinder_weight(const Weight& W, const IfsView& view, const RealVec& x, std::span<const std::uint32_t> word) {
  double w = 1.0;
  RealVec z = x;
  for (auto letter : word) {
    z = view.tau(letter, z);
    w *= W(z);
    if (w == 0.0) break;
  }
  return w;
}

double cycle_event_probability(const Weight& W, const IfsView& view, const RealVec& x,
                               std::span<const std::uint32_t> word, const Cycle& cycle, double tol) {
  RealVec z = x;
  double w = 1.0;
  for (auto letter : word) {
    z = view.tau(letter, z);
    w *= W(z);
  }
  // After a block z - c_0 evolves as M^{-j}(z - c_0), so the remaining
  // product is at least 1 - lip * tail * |z - c_0|.
  const RealVec c0 = to_real(cycle.points.front());
  const double lip = W.lipschitz_bound().value_or(0.0);
  const bool have_bound = W.lipschitz_bound().has_value();
  constexpr int kMaxRepeats = 4096;
  for (int rep = 0; rep < kMaxRepeats && w > 0.0; ++rep) {
    for (auto letter : cycle.word) {
      z = view.tau(letter, z);
      w *= W(z);
    }
    const double dist = norm2(z - c0);
    if (have_bound ? w * lip * view.geometric_tail_factor() * dist <= tol : dist <= tol) break;
  }
  return w;
}

double PathEnsemble::frequency(std::span<const std::uint32_t> prefix) const {
  if (words.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& w : words) {
    if (w.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), w.begin())) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(words.size());
}

PathEnsemble sample_paths(const Weight& W, const IfsView& view, const RealVec& x, std::size_t length,
                          std::size_t count, std::uint64_t seed, unsigned threads) {
  if (x.size() != view.dim()) throw std::invalid_argument("sample_paths: start point has wrong dimension");
  const BranchKernel kernel(W, view);
  PathEnsemble out{x, length, seed, std::vector<Word>(count)};
  const std::size_t n_blocks = (count + kBlock - 1) / kBlock;
  parallel_for(n_blocks, threads, [&](std::size_t block) {
    Engine rng = stream_engine(seed, block);
    const std::size_t end = std::min(count, (block + 1) * kBlock);
    for (std::size_t i = block * kBlock; i < end; ++i) {
      RealVec z = x;
      Word& w = out.words[i];
      w.resize(length);
      for (std::size_t n = 0; n < length; ++n) w[n] = kernel.step(z, rng);
    }
  });
  return out;
}

double default_epsilon(std::span<const Cycle> cycles, const IfsView& view) {
  std::vector<RealVec> pts;
  for (const auto& c : cycles) {
    for (const auto& p : c.points) pts.push_back(to_real(p));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) best = std::min(best, distance(pts[i], pts[j]));
  if (std::isfinite(best)) return best / 8.0;
  const double r = view.attractor_radius();
  return (r > 0.0 ? r : 1.0) / 8.0;
}

HEstimate estimate_h(const Weight& W, const IfsView& view, const RealVec& x, std::span<const Cycle> w_cycles,
                     std::size_t length, std::size_t count, std::uint64_t seed, unsigned threads, double epsilon) {
  if (w_cycles.empty()) throw std::invalid_argument("estimate_h: no W-cycles given");
  if (count == 0) throw std::invalid_argument("estimate_h: count must be >= 1");
  if (x.size() != view.dim()) throw std::invalid_argument("estimate_h: start point has wrong dimension");
  HEstimate out;
  out.count = count;
  out.epsilon = epsilon > 0.0 ? epsilon : default_epsilon(w_cycles, view);

  const std::size_t nc = w_cycles.size();
  std::vector<std::vector<RealVec>> points(nc);
  std::vector<std::size_t> check_at(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    for (const auto& p : w_cycles[c].points) points[c].push_back(to_real(p));
    check_at[c] = (length / w_cycles[c].period()) * w_cycles[c].period();
  }

  const BranchKernel kernel(W, view);
  const std::size_t n_blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::vector<std::size_t>> hits(n_blocks, std::vector<std::size_t>(nc, 0));
  parallel_for(n_blocks, threads, [&](std::size_t block) {
    Engine rng = stream_engine(seed, block);
    const std::size_t end = std::min(count, (block + 1) * kBlock);
    std::vector<RealVec> snap(nc);
    for (std::size_t i = block * kBlock; i < end; ++i) {
      RealVec z = x;
      for (std::size_t c = 0; c < nc; ++c) {
        if (check_at[c] == 0) snap[c] = z;
      }
      for (std::size_t n = 1; n <= length; ++n) {
        kernel.step(z, rng);
        for (std::size_t c = 0; c < nc; ++c) {
          if (check_at[c] == n) snap[c] = z;
        }
      }
      for (std::size_t c = 0; c < nc; ++c) {
        const bool near = std::any_of(points[c].begin(), points[c].end(),
                                      [&](const RealVec& p) { return distance(snap[c], p) <= out.epsilon; });
        if (near) {
          ++hits[block][c];
          break;
        }
      }
    }
  });

  const double n = static_cast<double>(count);
  auto std_error = [n](std::size_t k) {
    const double q = (static_cast<double>(k) + 1.0) / (n + 2.0);
    return std::sqrt(q * (1.0 - q) / n);
  };
  std::size_t total_hits = 0;
  out.per_cycle.resize(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    std::size_t k = 0;
    for (const auto& b : hits) k += b[c];
    total_hits += k;
    out.per_cycle[c] = CycleEstimate{static_cast<double>(k) / n, std_error(k), k};
  }
  out.total = static_cast<double>(total_hits) / n;
  out.total_std_error = std_error(total_hits);
  out.unclassified = 1.0 - out.total;
  return out;
}

namespace {

struct ClosedFormWalk {
  const AffineSystem& sys;
  const FourierTransform& ft;
  const Weight& W;
  const RatVec& x;
  std::vector<Cycle> rotations;
  unsigned depth;
  double prune_below;
  std::size_t p;
  std::size_t blocks;  // N^p
  std::vector<RatMat> powers;  // S^j, j <= depth * p
  HClosedForm out;

  // omega has m blocks; k_prefix = sum_j S^j omega_j.  Every rotation of the
  // cycle contributes one term: the path omega followed by that phase.
  void visit(unsigned m, const Word& last_block, const RealVec& z, double cyl, const RatVec& k_prefix) {
    double terms = 0.0;
    for (std::size_t r = 0; r < p; ++r) {
      const double term = std::norm(ft(x + k_prefix - powers[m * p] * rotations[r].points.front()).value);
      terms += term;
      if (m > 0 && last_block == rotations[r].word) continue;
      out.value += term;
      ++out.terms;
    }
    if (m == depth) {
      out.unresolved += std::max(0.0, cyl - terms);
      return;
    }
    const std::size_t n = sys.size();
    Word block(p);
    for (std::size_t idx = 0; idx < blocks; ++idx) {
      std::size_t rest = idx;
      for (std::size_t k = p; k-- > 0;) {
        block[k] = static_cast<std::uint32_t>(rest % n);
        rest /= n;
      }
      RealVec zc = z;
      double w = cyl;
      for (auto letter : block) {
        zc = sys.l_view().tau(letter, zc);
        const double wl = W(zc);
        w *= wl < BranchKernel::kZeroWeight ? 0.0 : wl;
        if (w == 0.0) break;
      }
      if (w == 0.0) continue;
      if (w < prune_below) {
        out.unresolved += w;
        continue;
      }
      RatVec k = k_prefix;
      for (std::size_t j = 0; j < p; ++j) k += powers[m * p + j] * sys.L()[block[j]];
      visit(m + 1, block, zc, w, k);
    }
  }
};

}  // namespace

HClosedForm h_closed_form(const AffineSystem& sys, const RatVec& x, const Cycle& cycle, unsigned depth,
                          double prune_below, double tail_tol) {
  if (cycle.points.empty()) throw std::invalid_argument("h_closed_form: empty cycle");
  if (x.size() != sys.dim()) throw std::invalid_argument("h_closed_form: point has wrong dimension");
  const FourierTransform ft(sys, tail_tol);
  const Weight W = Weight::from_digits(sys.B_real());
  std::size_t blocks = 1;
  for (std::size_t k = 0; k < cycle.period(); ++k) blocks *= sys.size();
  std::vector<RatMat> powers{RatMat::identity(sys.dim())};
  for (std::size_t j = 0; j < depth * cycle.period(); ++j) powers.push_back(powers.back() * sys.S());
  std::vector<Cycle> rotations;
  for (std::size_t r = 0; r < cycle.period(); ++r) rotations.push_back(rotated(cycle, r));
  ClosedFormWalk walk{sys, ft, W, x, std::move(rotations), depth, prune_below, cycle.period(), blocks, std::move(powers), {}};
  walk.visit(0, {}, to_real(x), 1.0, RatVec(sys.dim()));
  return walk.out;
}

}  // namespace fracspec
