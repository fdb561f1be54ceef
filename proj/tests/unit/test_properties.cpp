#include <doctest.h>

#include <cmath>
#include <random>

#include <fracspec/cycles.hpp>
#include <fracspec/fourier.hpp>
#include <fracspec/pathspace.hpp>
#include <fracspec/random.hpp>
#include <fracspec/spectrum.hpp>
#include <fracspec/transfer.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

namespace {

std::vector<AffineSystem> dual_systems() { return {cantor4(), scale4(3), scale4(15), planar_shear(), twindragon()}; }

RatVec random_rational(Engine& rng, std::size_t d, long range, long den) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  RatVec v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = q(num(rng), den);
  return v;
}

RealVec random_real(Engine& rng, std::size_t d, double range) {
  RealVec v(d);
  for (std::size_t i = 0; i < d; ++i) v[i] = (2.0 * uniform01(rng) - 1.0) * range;
  return v;
}

Word random_word(Engine& rng, std::size_t n, std::size_t len) {
  std::uniform_int_distribution<std::uint32_t> digit(0, static_cast<std::uint32_t>(n - 1));
  Word w(len);
  for (auto& x : w) x = digit(rng);
  return w;
}

}  // namespace

TEST_CASE("property: mu_hat satisfies the refinement identity") {
  Engine rng = stream_engine(101, 0);
  for (const AffineSystem& sys : dual_systems()) {
    const FourierTransform ft(sys, 1e-12);
    const RealMat S = to_real(sys.S());
    for (int trial = 0; trial < 40; ++trial) {
      const RealVec t = random_real(rng, sys.dim(), 6.0);
      const auto lhs = ft(S * t).value;
      const auto rhs = m_eval(sys.B_real(), t) / std::sqrt(static_cast<double>(sys.size())) * ft(t).value;
      CHECK(std::abs(lhs - rhs) < 1e-9);
      CHECK(std::abs(ft(t).value) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("property: exact and floating mu_hat agree") {
  Engine rng = stream_engine(102, 0);
  for (const AffineSystem& sys : dual_systems()) {
    const FourierTransform ft(sys, 1e-12);
    for (int trial = 0; trial < 30; ++trial) {
      const RatVec t = random_rational(rng, sys.dim(), 20, 7);
      CHECK(std::abs(ft(t).value - ft(to_real(t)).value) < 1e-8);
    }
  }
}

TEST_CASE("property: cycle points close under their word") {
  Engine rng = stream_engine(103, 0);
  for (const AffineSystem& sys : dual_systems()) {
    for (int trial = 0; trial < 10; ++trial) {
      const Word w = random_word(rng, sys.size(), 1 + trial % 5);
      const Cycle c = make_cycle(sys, w);
      for (std::size_t i = 0; i < c.period(); ++i) {
        const RatVec next = sys.l_view().tau(c.word[i], c.points[i]);
        CHECK(next == c.points[(i + 1) % c.period()]);
      }
    }
  }
}

TEST_CASE("property: the QMF identity holds at random points") {
  for (const AffineSystem& sys : dual_systems()) {
    const Weight W = Weight::from_digits(sys.B_real());
    CHECK(check_qmf(W, sys.l_view(), 500, 104) < 1e-12);
  }
}

TEST_CASE("property: spectrum elements are pairwise orthogonal") {
  Engine rng = stream_engine(105, 0);
  for (const AffineSystem& sys : dual_systems()) {
    const SpectrumSet s = generate_lambda(sys, find_w_cycles(sys, 4), 6, 4000);
    REQUIRE(s.size() >= 2);
    std::uniform_int_distribution<std::size_t> pick(0, s.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      CHECK(std::abs(mu_hat(sys, s.elements[i] - s.elements[j]).value) < 1e-8);
    }
  }
}

TEST_CASE("property: k-points satisfy the shift recursion") {
  Engine rng = stream_engine(106, 0);
  for (const AffineSystem& sys : dual_systems()) {
    for (const Cycle& c : find_w_cycles(sys, 4)) {
      const std::size_t p = c.period();
      for (int trial = 0; trial < 5; ++trial) {
        const Word omega = random_word(rng, sys.size(), p * (1 + trial % 3));
        Word shifted(omega.begin() + 1, omega.end());
        shifted.push_back(c.word[0]);
        CHECK(k_point(sys, c, omega) == sys.L()[omega[0]] + sys.S() * k_point(sys, rotated(c, 1), shifted));
      }
    }
  }
}

TEST_CASE("property: cycle events factor through mu_hat") {
  Engine rng = stream_engine(107, 0);
  for (const AffineSystem& sys : {cantor4(), twindragon()}) {
    const Weight W = Weight::from_digits(sys.B_real());
    const FourierTransform ft(sys, 1e-12);
    const auto cycles = find_w_cycles(sys, 4);
    for (int trial = 0; trial < 10; ++trial) {
      const Cycle& c = cycles[static_cast<std::size_t>(trial) % cycles.size()];
      const RatVec x = random_rational(rng, sys.dim(), 1, 10);
      const Word w = random_word(rng, sys.size(), c.period() * (1 + trial % 2));
      const double lhs = cycle_event_probability(W, sys.l_view(), to_real(x), w, c);
      const double rhs = std::norm(ft(x + k_point(sys, c, w)).value);
      INFO(sys.dim(), " x=", to_string(x), " c=", c.word.size(), " w=", w.size(), " ", lhs, " ", rhs);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("property: grid interpolation reproduces affine functions") {
  Engine rng = stream_engine(108, 0);
  const Box box{RealVec{-1.0, -2.0}, RealVec{3.0, 1.0}};
  const GridFunction g = GridFunction::sample(box, {17, 9}, [](const RealVec& x) { return 2.0 * x[0] - 0.5 * x[1] + 1.0; });
  for (int trial = 0; trial < 100; ++trial) {
    const RealVec x{-1.0 + 4.0 * uniform01(rng), -2.0 + 3.0 * uniform01(rng)};
    CHECK(g.interpolate(x) == doctest::Approx(2.0 * x[0] - 0.5 * x[1] + 1.0).epsilon(1e-12));
  }
}
