#include "fracspec/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracspec/parallel.hpp"

namespace fracspec {
namespace {

constexpr std::size_t kChunk = 4096;

// Data shared by all words of one length p.
struct PeriodTables {
  RatMat solve_inverse;                    // (S^p - I)^{-1}
  std::vector<std::vector<RatVec>> s_l;    // s_l[k][j] = S^k l_j
};

PeriodTables period_tables(const AffineSystem& sys, unsigned p) {
  PeriodTables t;
  const RatMat sp = mat_pow(sys.S(), p);
  try {
    t.solve_inverse = inverse_exact(sp - RatMat::identity(sys.dim()));
  } catch (const SingularMatrixError&) {
    throw std::logic_error("S^" + std::to_string(p) + " - I is singular although S is expansive");
  }
  RatMat power = RatMat::identity(sys.dim());
  for (unsigned k = 0; k < p; ++k) {
    std::vector<RatVec> row;
    for (const auto& l : sys.L()) row.push_back(power * l);
    t.s_l.push_back(std::move(row));
    power = power * sys.S();
  }
  return t;
}

Cycle build(const AffineSystem& sys, const PeriodTables& t, Word word) {
  const std::size_t p = word.size();
  RatVec rhs(sys.dim());
  for (std::size_t k = 0; k < p; ++k) rhs += t.s_l[k][word[k]];
  Cycle c;
  c.points.reserve(p);
  c.points.push_back(t.solve_inverse * rhs);
  for (std::size_t k = 0; k + 1 < p; ++k) c.points.push_back(sys.l_view().tau(word[k], c.points.back()));
  if (sys.l_view().tau(word[p - 1], c.points.back()) != c.points.front()) {
    throw std::logic_error("cycle of word length " + std::to_string(p) + " does not close");
  }
  c.word = std::move(word);
  return c;
}

std::size_t checked_count(std::size_t n, unsigned p) {
  std::size_t count = 1;
  for (unsigned k = 0; k < p; ++k) {
    if (count > (std::size_t{1} << 40) / n) {
      throw std::invalid_argument("p_max " + std::to_string(p) + " needs more than 2^40 words");
    }
    count *= n;
  }
  return count;
}

}  // namespace

const char* to_string(WStatus s) {
  switch (s) {
    case WStatus::unclassified: return "unclassified";
    case WStatus::w_cycle: return "w_cycle";
    case WStatus::not_w_cycle: return "not_w_cycle";
    case WStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

bool Cycle::contains(const RatVec& x) const {
  return std::find(points.begin(), points.end(), x) != points.end();
}

bool is_aperiodic(std::span<const std::uint32_t> w) {
  const std::size_t p = w.size();
  for (std::size_t q = 1; q < p; ++q) {
    if (p % q != 0) continue;
    bool repeats = true;
    for (std::size_t i = q; i < p && repeats; ++i) repeats = w[i] == w[i - q];
    if (repeats) return false;
  }
  return true;
}

bool is_least_rotation(std::span<const std::uint32_t> w) {
  const std::size_t p = w.size();
  for (std::size_t r = 1; r < p; ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      const auto a = w[(r + i) % p];
      if (a < w[i]) return false;
      if (a > w[i]) break;
    }
  }
  return true;
}

Cycle make_cycle(const AffineSystem& sys, Word word) {
  if (word.empty()) throw std::invalid_argument("cycle word is empty");
  for (auto letter : word) {
    if (letter >= sys.size()) throw std::out_of_range("cycle word letter out of range");
  }
  const PeriodTables tables = period_tables(sys, static_cast<unsigned>(word.size()));
  return build(sys, tables, std::move(word));
}

Cycle rotated(const Cycle& c, std::size_t by) {
  Cycle r = c;
  if (c.word.empty()) return r;
  by %= c.word.size();
  std::rotate(r.word.begin(), r.word.begin() + static_cast<std::ptrdiff_t>(by), r.word.end());
  std::rotate(r.points.begin(), r.points.begin() + static_cast<std::ptrdiff_t>(by), r.points.end());
  return r;
}

CycleEnumeration enumerate_cycles(const AffineSystem& sys, unsigned p_max, unsigned threads) {
  if (p_max == 0) throw std::invalid_argument("p_max must be >= 1");
  const std::size_t n = sys.size();
  CycleEnumeration out;
  for (unsigned p = 1; p <= p_max; ++p) {
    const std::size_t count = checked_count(n, p);
    const PeriodTables tables = period_tables(sys, p);
    const std::size_t n_chunks = (count + kChunk - 1) / kChunk;
    std::vector<std::vector<Cycle>> found(n_chunks);
    parallel_for(n_chunks, threads, [&](std::size_t chunk) {
      Word w(p);
      const std::size_t end = std::min(count, (chunk + 1) * kChunk);
      for (std::size_t idx = chunk * kChunk; idx < end; ++idx) {
        std::size_t rest = idx;
        for (std::size_t k = p; k-- > 0;) {
          w[k] = static_cast<std::uint32_t>(rest % n);
          rest /= n;
        }
        if (!is_least_rotation(w) || !is_aperiodic(w)) continue;
        found[chunk].push_back(build(sys, tables, w));
      }
    });
    for (auto& part : found) {
      for (auto& c : part) out.cycles.push_back(std::move(c));
    }
  }
  std::vector<RatVec> all;
  for (const auto& c : out.cycles) all.insert(all.end(), c.points.begin(), c.points.end());
  std::sort(all.begin(), all.end());
  out.points_distinct = std::adjacent_find(all.begin(), all.end()) == all.end();
  return out;
}

WStatus classify_w(const Cycle& c, std::span<const RatVec> B) {
  if (B.empty()) throw std::invalid_argument("classify_w: empty digit set");
  for (const auto& x : c.points) {
    for (const auto& b : B) {
      if (!is_integer(dot(b - B.front(), x))) return WStatus::not_w_cycle;
    }
  }
  return WStatus::w_cycle;
}

WStatus classify_w(const Cycle& c, std::span<const RealVec> B, double tol, double inconclusive_below) {
  if (B.empty()) throw std::invalid_argument("classify_w: empty digit set");
  const double n = static_cast<double>(B.size());
  double worst = 0.0;
  for (const auto& x : c.points) {
    const double m = std::abs(m_eval(B, to_real(x)));
    worst = std::max(worst, std::abs(m * m / n - 1.0));
  }
  if (worst < tol) return WStatus::w_cycle;
  if (worst <= inconclusive_below) return WStatus::inconclusive;
  return WStatus::not_w_cycle;
}

std::vector<Cycle> find_w_cycles(const AffineSystem& sys, unsigned p_max, unsigned threads) {
  std::vector<Cycle> out;
  for (auto& c : enumerate_cycles(sys, p_max, threads).cycles) {
    c.status = classify_w(c, sys.B());
    if (c.is_w_cycle()) out.push_back(std::move(c));
  }
  return out;
}

AffineSystem power_system(const AffineSystem& sys, unsigned p) {
  if (p == 0) throw std::invalid_argument("power_system: p must be >= 1");
  const std::size_t n = sys.size();
  const std::size_t count = checked_count(n, p);
  auto expand = [&](const std::vector<RatVec>& digits, const RatMat& m) {
    std::vector<RatMat> powers{RatMat::identity(sys.dim())};
    for (unsigned k = 1; k < p; ++k) powers.push_back(powers.back() * m);
    std::vector<RatVec> out;
    out.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
      RatVec v(sys.dim());
      std::size_t rest = idx;
      for (unsigned k = 0; k < p; ++k) {
        v += powers[k] * digits[rest % n];
        rest /= n;
      }
      out.push_back(std::move(v));
    }
    return out;
  };
  return AffineSystem(mat_pow(sys.R(), p), expand(sys.B(), sys.R()), expand(sys.L(), sys.S()),
                      sys.unitarity_tol());
}

}  // namespace fracspec
