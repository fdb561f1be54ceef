#include "fracspec/spectrum.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "fracspec/fourier.hpp"
#include "fracspec/parallel.hpp"

namespace fracspec {

std::vector<RatVec> SpectrumSet::up_to_level(unsigned lvl) const {
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (level_of[i] <= lvl) out.push_back(elements[i]);
  }
  return out;
}

SpectrumSet generate_lambda(const AffineSystem& sys, std::span<const Cycle> w_cycles, unsigned levels,
                            std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("generate_lambda: cap must be >= 1");
  SpectrumSet out;
  out.cap = cap;
  std::set<RatVec> seen;
  std::vector<RatVec> frontier;
  auto add = [&](RatVec v, unsigned lvl) {
    if (out.elements.size() >= cap) {
      out.capped = true;
      return false;
    }
    if (!seen.insert(v).second) return true;
    out.elements.push_back(v);
    out.level_of.push_back(lvl);
    frontier.push_back(std::move(v));
    return true;
  };
  for (const auto& c : w_cycles) {
    for (const auto& x : c.points) {
      RatVec s = -x;
      if (std::find(out.seeds.begin(), out.seeds.end(), s) == out.seeds.end()) out.seeds.push_back(s);
      add(std::move(s), 0);
    }
  }
  for (unsigned lvl = 1; lvl <= levels && !out.capped; ++lvl) {
    std::vector<RatVec> current;
    current.swap(frontier);
    for (const auto& x : current) {
      const RatVec sx = sys.S() * x;
      for (const auto& l : sys.L()) {
        if (!add(sx + l, lvl)) break;
      }
      if (out.capped) break;
    }
    if (!out.capped) out.level = lvl;
  }
  return out;
}

std::vector<RatVec> sorted(std::vector<RatVec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<RatVec> window(std::span<const RatVec> elements, const Rational& lo, const Rational& hi) {
  std::vector<RatVec> out;
  for (const auto& e : elements) {
    if (std::all_of(e.begin(), e.end(), [&](const Rational& c) { return c >= lo && c <= hi; })) out.push_back(e);
  }
  return sorted(std::move(out));
}

std::vector<Rational> smallest_nonnegative(std::span<const RatVec> elements, std::size_t count) {
  std::vector<Rational> vals;
  for (const auto& e : elements) {
    if (e.size() != 1) throw std::invalid_argument("smallest_nonnegative: needs d = 1");
    if (e[0] >= 0) vals.push_back(e[0]);
  }
  std::sort(vals.begin(), vals.end());
  if (vals.size() > count) vals.resize(count);
  return vals;
}

RatVec k_point(const AffineSystem& sys, const Cycle& cycle, std::span<const std::uint32_t> omega) {
  if (cycle.points.empty()) throw std::invalid_argument("k_point: empty cycle");
  if (omega.size() % cycle.period() != 0) {
    throw std::invalid_argument("k_point: word length " + std::to_string(omega.size()) +
                                " is not a multiple of the cycle period " + std::to_string(cycle.period()));
  }
  RatVec k(sys.dim());
  RatMat power = RatMat::identity(sys.dim());
  for (auto letter : omega) {
    if (letter >= sys.size()) throw std::out_of_range("k_point: word letter out of range");
    k += power * sys.L()[letter];
    power = power * sys.S();
  }
  return k - power * cycle.points.front();
}

GramReport verify_orthogonality(const AffineSystem& sys, std::span<const RatVec> lambdas, double tail_tol,
                                unsigned threads) {
  const FourierTransform ft(sys, tail_tol);
  const std::size_t n = lambdas.size();
  std::vector<GramReport> rows(n);
  parallel_for(n, threads, [&](std::size_t i) {
    GramReport& r = rows[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const FourierValue v = ft(lambdas[i] - lambdas[j]);
      ++r.pairs;
      if (v.exact_zero) ++r.exact_zero_pairs;
      const double a = std::abs(v.value);
      if (a > r.max_offdiag || r.pairs == 1) {
        r.max_offdiag = a;
        r.argmax_i = i;
        r.argmax_j = j;
      }
    }
  });
  GramReport out;
  for (const auto& r : rows) {
    if (r.pairs == 0) continue;
    if (out.pairs == 0 || r.max_offdiag > out.max_offdiag) {
      out.max_offdiag = r.max_offdiag;
      out.argmax_i = r.argmax_i;
      out.argmax_j = r.argmax_j;
    }
    out.pairs += r.pairs;
    out.exact_zero_pairs += r.exact_zero_pairs;
  }
  return out;
}

std::vector<double> completeness_partials(const AffineSystem& sys, std::span<const RatVec> lambdas, const RatVec& x,
                                          double tail_tol) {
  const FourierTransform ft(sys, tail_tol);
  std::vector<double> out;
  out.reserve(lambdas.size());
  double s = 0.0;
  for (const auto& l : lambdas) {
    s += std::norm(ft(x + l).value);
    out.push_back(s);
  }
  return out;
}

double completeness_sum(const AffineSystem& sys, std::span<const RatVec> lambdas, const RatVec& x, double tail_tol) {
  const auto p = completeness_partials(sys, lambdas, x, tail_tol);
  return p.empty() ? 0.0 : p.back();
}

bool Lattice::contains(const RatVec& x) const {
  if (x.size() != denominators.size()) throw std::invalid_argument("lattice dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_integer(x[i] * denominators[i])) return false;
  }
  return true;
}

std::vector<RatVec> Lattice::window(long radius) const {
  if (radius < 0) throw std::invalid_argument("lattice window radius must be >= 0");
  const std::size_t d = denominators.size();
  std::vector<RatVec> out;
  std::vector<long> k(d, -radius);
  while (true) {
    RatVec v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = Rational(k[i]) / Rational(denominators[i]);
    out.push_back(std::move(v));
    std::size_t a = d;
    while (a > 0 && k[a - 1] == radius) k[--a] = -radius;
    if (a == 0) break;
    ++k[a - 1];
  }
  return out;
}

RatVec lattice_step(const AffineSystem& sys, const Lattice& lattice, const RatVec& x) {
  if (!lattice.contains(x)) throw LatticeError("point " + to_string(x) + " is not on the lattice");
  std::optional<RatVec> found;
  for (std::size_t l = 0; l < sys.size(); ++l) {
    RatVec y = sys.l_view().tau(l, x);
    if (!lattice.contains(y)) continue;
    if (found) throw LatticeError("point " + to_string(x) + " has several decompositions S y - l");
    found = std::move(y);
  }
  if (!found) throw LatticeError("point " + to_string(x) + " has no decomposition S y - l on the lattice");
  return *found;
}

BasinResult cycle_basin(const AffineSystem& sys, const Lattice& lattice, std::span<const Cycle> cycles,
                        const RatVec& x, std::size_t max_steps) {
  BasinResult r;
  r.last = x;
  for (;;) {
    for (std::size_t c = 0; c < cycles.size(); ++c) {
      if (cycles[c].contains(r.last)) {
        r.cycle = c;
        return r;
      }
    }
    if (r.steps == max_steps) return r;
    r.last = lattice_step(sys, lattice, r.last);
    ++r.steps;
  }
}

bool orthogonal(const AffineSystem& sys, const RatVec& a, const RatVec& b, double tail_tol, double zero_tol) {
  const FourierValue v = mu_hat(sys, a - b, tail_tol);
  return v.exact_zero || std::abs(v.value) < zero_tol;
}

std::vector<RatVec> greedy_orthogonal_family(const AffineSystem& sys, std::span<const RatVec> candidates,
                                             double tail_tol) {
  std::vector<RatVec> family;
  for (const auto& c : candidates) {
    if (std::all_of(family.begin(), family.end(), [&](const RatVec& f) { return orthogonal(sys, c, f, tail_tol); })) {
      family.push_back(c);
    }
  }
  return family;
}

namespace {

using Adjacency = std::vector<std::vector<char>>;

void bron_kerbosch(const Adjacency& adj, std::vector<std::size_t>& r, std::vector<std::size_t> p,
                   std::vector<std::size_t> x, std::vector<std::size_t>& best) {
  if (p.empty() && x.empty()) {
    if (r.size() > best.size()) best = r;
    return;
  }
  if (r.size() + p.size() <= best.size()) return;
  std::size_t pivot = p.empty() ? x.front() : p.front();
  std::size_t pivot_degree = 0;
  for (const auto* set : {&p, &x}) {
    for (auto u : *set) {
      std::size_t deg = 0;
      for (auto v : p) deg += adj[u][v] ? 1 : 0;
      if (deg >= pivot_degree) {
        pivot = u;
        pivot_degree = deg;
      }
    }
  }
  std::vector<std::size_t> candidates;
  for (auto v : p) {
    if (!adj[pivot][v]) candidates.push_back(v);
  }
  for (auto v : candidates) {
    std::vector<std::size_t> p2, x2;
    for (auto u : p) {
      if (adj[v][u]) p2.push_back(u);
    }
    for (auto u : x) {
      if (adj[v][u]) x2.push_back(u);
    }
    r.push_back(v);
    bron_kerbosch(adj, r, std::move(p2), std::move(x2), best);
    r.pop_back();
    p.erase(std::find(p.begin(), p.end(), v));
    x.push_back(v);
  }
}

}  // namespace

std::vector<RatVec> max_orthogonal_clique(const AffineSystem& sys, std::span<const RatVec> candidates,
                                          double tail_tol, unsigned threads) {
  const std::size_t n = candidates.size();
  const FourierTransform ft(sys, tail_tol);
  Adjacency adj(n, std::vector<char>(n, 0));
  parallel_for(n, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const FourierValue v = ft(candidates[i] - candidates[j]);
      adj[i][j] = (v.exact_zero || std::abs(v.value) < 1e-10) ? 1 : 0;
    }
  });
  std::vector<std::size_t> r, best, p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  bron_kerbosch(adj, r, std::move(p), {}, best);
  std::vector<RatVec> out;
  for (auto i : best) out.push_back(candidates[i]);
  return out;
}

}  // namespace fracspec
