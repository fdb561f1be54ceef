#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fracspec/cycles.hpp>
#include <fracspec/fourier.hpp>
#include <fracspec/pathspace.hpp>
#include <fracspec/spectrum.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

TEST_CASE("branch probabilities are the weights of the inverse branches") {
  const AffineSystem sys = cantor4();
  const Weight W = Weight::from_digits(sys.B_real());
  const BranchKernel k(W, sys.l_view());
  const auto p = k.probabilities(RealVec{0.3});
  REQUIRE(p.size() == 2);
  CHECK(p[0] + p[1] == doctest::Approx(1.0));
  CHECK(p[0] == doctest::Approx(W(RealVec{0.3 / 4.0})));
  // At the fixed point 0 the path stays: W(0) = 1, W(1/4) = 0.
  const auto p0 = k.probabilities(RealVec{0.0});
  CHECK(p0[0] == 1.0);
  CHECK(p0[1] == 0.0);
  Engine rng = stream_engine(1, 0);
  RealVec z{0.0};
  for (int i = 0; i < 20; ++i) CHECK(k.step(z, rng) == 0u);
}

TEST_CASE("non-QMF weights are rejected by the kernel") {
  const AffineSystem sys = cantor3();
  const Weight W = Weight::from_digits(sys.B_real());
  const BranchKernel k(W, sys.l_view());
  CHECK_THROWS_AS(k.probabilities(RealVec{0.0}), KernelError);
}

TEST_CASE("cycle event probabilities equal |mu_hat(x + k(omega))|^2") {
  const AffineSystem sys = cantor4();
  const Weight W = Weight::from_digits(sys.B_real());
  const FourierTransform ft(sys);
  const Cycle zero = make_cycle(sys, {0});
  for (const RatVec& x : {r1(3, 10), r1(1, 7), r1(-2, 9)}) {
    for (const Word& w : std::vector<Word>{{}, {1}, {0, 1}, {1, 1, 0}, {1, 0, 1, 1}}) {
      const double lhs = cycle_event_probability(W, sys.l_view(), to_real(x), w, zero);
      const double rhs = std::norm(ft(x + k_point(sys, zero, w)).value);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
    }
  }
}

TEST_CASE("cylinder weights of one level sum to one") {
  const AffineSystem sys = twindragon();
  const Weight W = Weight::from_digits(sys.B_real());
  const RealVec x{0.3, -0.1};
  double total = 0.0;
  for (std::uint32_t a = 0; a < 2; ++a)
    for (std::uint32_t b = 0; b < 2; ++b)
      for (std::uint32_t c = 0; c < 2; ++c) total += cylinder_weight(W, sys.l_view(), x, Word{a, b, c});
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("path ensembles are reproducible and match cylinder weights") {
  const AffineSystem sys = twindragon();
  const Weight W = Weight::from_digits(sys.B_real());
  const RealVec x{0.5, 0.5};
  const PathEnsemble a = sample_paths(W, sys.l_view(), x, 8, 20000, 9, 1);
  const PathEnsemble b = sample_paths(W, sys.l_view(), x, 8, 20000, 9, 3);
  CHECK(a.words == b.words);
  for (const Word& prefix : std::vector<Word>{{0}, {1, 0}, {0, 1, 1}}) {
    const double p = cylinder_weight(W, sys.l_view(), x, prefix);
    const double sigma = std::sqrt(p * (1.0 - p) / 20000.0);
    CHECK(std::abs(a.frequency(prefix) - p) < 4.0 * sigma + 1e-12);
  }
}

TEST_CASE("quarter Cantor: the only W-cycle carries all the mass") {
  const AffineSystem sys = cantor4();
  const Weight W = Weight::from_digits(sys.B_real());
  const auto cycles = find_w_cycles(sys, 6);
  const HEstimate est = estimate_h(W, sys.l_view(), RealVec{0.3}, cycles, 64, 20000, 4, 2);
  CHECK(est.total == doctest::Approx(1.0).epsilon(0.02));
  CHECK(est.per_cycle[0].std_error > 0.0);
  const HClosedForm cf = h_closed_form(sys, r1(3, 10), cycles[0], 16, 1e-9);
  CHECK(cf.value == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(cf.value + cf.unresolved >= 1.0 - 1e-9);
  CHECK(std::abs(est.per_cycle[0].probability - cf.value) <= 3.0 * est.per_cycle[0].std_error);
}

TEST_CASE("L = {0,3}: both W-cycles split the mass") {
  const AffineSystem sys = scale4(3);
  const Weight W = Weight::from_digits(sys.B_real());
  const auto cycles = find_w_cycles(sys, 4);
  REQUIRE(cycles.size() == 2);
  const RatVec x = r1(1, 2);
  const HEstimate est = estimate_h(W, sys.l_view(), to_real(x), cycles, 64, 40000, 12);
  double cf_sum = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    const HClosedForm cf = h_closed_form(sys, x, cycles[c], 14, 1e-10);
    cf_sum += cf.value;
    CHECK(std::abs(est.per_cycle[c].probability - cf.value) <= 4.0 * est.per_cycle[c].std_error + cf.unresolved);
    CHECK(cf.value > 0.05);
  }
  CHECK(cf_sum == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("default epsilon") {
  const AffineSystem sys = scale4(15);
  const auto cycles = find_w_cycles(sys, 2);
  // Points 0, 1, 4, 5: minimum separation 1.
  CHECK(default_epsilon(cycles, sys.l_view()) == doctest::Approx(1.0 / 8.0));
  const auto one = find_w_cycles(cantor4(), 1);
  CHECK(default_epsilon(one, cantor4().l_view()) == doctest::Approx(cantor4().l_view().attractor_radius() / 8.0));
}

TEST_CASE("closed form counts every phase of the cycle") {
  const AffineSystem sys = twindragon();
  const auto cycles = find_w_cycles(sys, 4);
  const auto it = std::find_if(cycles.begin(), cycles.end(), [](const Cycle& c) { return c.word == Word{0, 0, 1, 1}; });
  REQUIRE(it != cycles.end());
  for (const RatVec& x : it->points) {
    const HClosedForm cf = h_closed_form(sys, x, *it, 1);
    CHECK(cf.value == doctest::Approx(1.0).epsilon(1e-9));
  }
}
