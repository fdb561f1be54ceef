#include <doctest.h>

#include <complex>

#include <fracspec/affine_system.hpp>
#include <fracspec/ifs.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

TEST_CASE("tau maps and word application") {
  const AffineSystem sys = cantor4();
  const IfsView& b = sys.b_view();
  CHECK(b.tau(1, r1(0)) == r1(1, 2));
  CHECK(b.tau(0, r1(2)) == r1(1, 2));
  CHECK(b.tau(1, RealVec{0.0})[0] == doctest::Approx(0.5));
  // w_1 acts first: tau_0(tau_1(0)) = (1/2)/4.
  CHECK(b.apply_word({1, 0}, RealVec{0.0})[0] == doctest::Approx(0.125));
  CHECK_THROWS(b.tau(2, r1(0)));
}

TEST_CASE("attractor radius and ball invariance") {
  const AffineSystem sys = cantor4();
  CHECK(sys.b_view().attractor_radius() == doctest::Approx(2.0 / 3.0));
  CHECK(sys.b_view().ball_is_invariant());
  const Box box = sys.b_view().bounding_box(0.0);
  CHECK(box.contains(RealVec{0.5}));
  CHECK_FALSE(box.contains(RealVec{0.7}));
  // Twin dragon: ||S^{-1}|| = 1/sqrt(2).
  const AffineSystem dragon = twindragon();
  CHECK(dragon.l_view().contraction_factor() == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("pi_truncated codes finite words") {
  const AffineSystem sys = cantor4();
  const TruncatedPoint p = pi_truncated(sys.b_view(), {1, 1});
  CHECK(p.point == r1(5, 8));
  // Any extension lies in 5/8 + [0, 2/3]/16.
  CHECK(p.error_bound >= (2.0 / 3.0) / 16.0 - 1e-15);
  CHECK(pi_truncated(sys.b_view(), {}).point == r1(0));
}

TEST_CASE("chaos game stays on the attractor and ignores the thread count") {
  const AffineSystem sys = cantor4();
  const auto a = chaos_game(sys.b_view(), 20000, 5, 1);
  const auto b = chaos_game(sys.b_view(), 20000, 5, 3);
  REQUIRE(a.size() == 20000);
  CHECK(a == b);
  for (const auto& x : a) {
    CHECK(x[0] >= -1e-12);
    CHECK(x[0] <= 2.0 / 3.0 + 1e-12);
    // Quarter Cantor set avoids (1/6, 1/2).
    CHECK((x[0] <= 1.0 / 6.0 + 1e-9 || x[0] >= 0.5 - 1e-9));
  }
  CHECK(chaos_game(sys.b_view(), 100, 6) != chaos_game(sys.b_view(), 100, 5));
}

TEST_CASE("m_B values") {
  const AffineSystem sys = cantor4();
  const auto& B = sys.B();
  CHECK(std::abs(m_eval(std::span<const RatVec>(B), r1(0))) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(m_eval(std::span<const RatVec>(B), r1(1, 4))) < 1e-15);
  const auto& Br = sys.B_real();
  CHECK(std::abs(m_eval(std::span<const RealVec>(Br), RealVec{0.25})) < 1e-15);
  const auto exact = m_eval(std::span<const RatVec>(B), r1(123456789, 10));
  const auto real = m_eval(std::span<const RealVec>(Br), RealVec{12345678.9});
  CHECK(std::abs(exact - real) < 1e-6);
}

TEST_CASE("affine system construction validates input") {
  CHECK_THROWS_AS(AffineSystem(RatMat(1, {q(4)}), ints1({0, 2}), ints1({0, 1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(AffineSystem(RatMat(1, {q(4)}), {}, {}), std::invalid_argument);
  CHECK_THROWS(AffineSystem(RatMat(1, {q(1, 2)}), ints1({0, 2}), ints1({0, 1})));
  CHECK_THROWS_AS(AffineSystem(RatMat(1, {q(4)}), ints2({{0, 0}, {1, 0}}), ints1({0, 1})), std::invalid_argument);
  const AffineSystem sys = planar_shear();
  CHECK(sys.S() == sys.R().transpose());
  CHECK(sys.exact());
  CHECK(sys.zero_in_B());
  CHECK(sys.zero_in_L());
}
