#include <doctest.h>

#include <complex>
#include <numbers>
#include <random>

#include <fracspec/fourier.hpp>
#include <fracspec/hadamard.hpp>
#include <fracspec/ifs.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

TEST_CASE("duality holds for the dual registry systems") {
  for (const AffineSystem& sys : {cantor4(), planar_shear(), twindragon(), scale4(3), scale4(15), scale4(63)}) {
    const DualityReport rep = check_duality(sys);
    CHECK(rep.passes);
    CHECK(rep.unitarity.max_deviation < 1e-12);
    CHECK(rep.integrality.proven);
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("middle-third Cantor pair is not Hadamard") {
  const DualityReport rep = check_duality(cantor3());
  CHECK_FALSE(rep.passes);
  CHECK(rep.expansivity.expansive);
  CHECK(rep.unitarity.max_deviation == doctest::Approx(0.5).epsilon(1e-9));
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0] == "hadamard_pair");
}

TEST_CASE("integrality failure is detected for non-integral digits") {
  // (R^{-1}B, L) = ({0, 1/2}, {1/4, 5/4}) is Hadamard but b.l = 1/2.
  const AffineSystem sys(RatMat(1, {q(4)}), ints1({0, 2}), {r1(1, 4), r1(5, 4)});
  const DualityReport rep = check_duality(sys);
  CHECK(rep.unitarity.passes);
  CHECK_FALSE(rep.integrality.passes);
  CHECK_FALSE(rep.passes);
  CHECK(std::find(rep.failures.begin(), rep.failures.end(), "integrality") != rep.failures.end());
}

TEST_CASE("planar shear pair gives a 4x4 complex Hadamard matrix with entries in {1,i,-1,-i}") {
  const AffineSystem sys = planar_shear();
  std::vector<RatVec> rb;
  for (const auto& b : sys.B()) rb.push_back(sys.b_view().inverse() * b);
  const Eigen::MatrixXcd U = hadamard_matrix(std::span<const RatVec>(rb), std::span<const RatVec>(sys.L()));
  CHECK(check_unitary(U).passes);
  bool has_i = false;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const std::complex<double> z = U(r, c) * 2.0;
      const bool unit = std::abs(z - 1.0) < 1e-12 || std::abs(z + 1.0) < 1e-12 ||
                        std::abs(z - std::complex<double>(0, 1)) < 1e-12 ||
                        std::abs(z + std::complex<double>(0, 1)) < 1e-12;
      CHECK(unit);
      has_i = has_i || std::abs(z.imag()) > 0.5;
    }
  CHECK(has_i);
}

TEST_CASE("tensor products of unitaries are unitary") {
  const std::vector<RealVec> a{RealVec{0.0}, RealVec{0.5}};
  const std::vector<RealVec> l{RealVec{0.0}, RealVec{1.0}};
  const Eigen::MatrixXcd H = hadamard_matrix(std::span<const RealVec>(a), std::span<const RealVec>(l));
  CHECK(check_unitary(H).passes);
  const Eigen::MatrixXcd T = tensor(H, H);
  CHECK(T.rows() == 4);
  CHECK(check_unitary(T).passes);
  CHECK_THROWS_AS(check_pair(std::span<const RealVec>(a), std::span<const RealVec>(l.data(), 1)),
                  std::invalid_argument);
}

TEST_CASE("Fourier transform of the quarter Cantor measure") {
  const AffineSystem sys = cantor4();
  const FourierTransform ft(sys);
  CHECK(std::abs(ft(r1(0)).value - 1.0) < 1e-12);
  const FourierValue one = ft(r1(1));
  CHECK(one.exact_zero);
  CHECK(one.value == 0.0);
  CHECK(ft(r1(4)).exact_zero);
  const FourierValue v24 = ft(r1(24));
  CHECK_FALSE(v24.exact_zero);
  CHECK(std::abs(v24.value) == doctest::Approx(0.5811539214293873).epsilon(1e-9));
}

TEST_CASE("Fourier transform vanishes on the twin dragon spectrum lattice") {
  const AffineSystem sys = twindragon();
  const FourierTransform ft(sys);
  for (long a = -5; a <= 5; ++a)
    for (long b = -5; b <= 5; ++b) {
      if (a == 0 && b == 0) continue;
      CHECK(std::abs(ft(rv({q(a, 5), q(b, 5)})).value) < 1e-10);
    }
  CHECK(std::abs(ft(rv({q(1, 3), q(0)})).value) == doctest::Approx(0.0403918949462235).epsilon(1e-9));
  CHECK(ft(rv({q(1, 2), q(1, 2)})).exact_zero);
}

TEST_CASE("refinement identity and exact/float agreement at random frequencies") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> num(-4000, 4000);
  for (const AffineSystem& sys : {cantor4(), twindragon(), planar_shear()}) {
    const FourierTransform ft(sys);
    const RatMat s_inv = inverse_exact(sys.S());
    const double rootn = std::sqrt(static_cast<double>(sys.size()));
    for (int i = 0; i < 50; ++i) {
      std::vector<Rational> c;
      for (std::size_t a = 0; a < sys.dim(); ++a) c.emplace_back(num(rng), 7);
      const RatVec t(c);
      const RatVec y = s_inv * t;
      const auto lhs = ft(t).value;
      const auto rhs = m_eval(std::span<const RatVec>(sys.B()), y) / rootn * ft(y).value;
      CHECK(std::abs(lhs - rhs) < 1e-9);
      CHECK(std::abs(lhs) <= 1.0 + 1e-12);
      CHECK(std::abs(lhs - ft(to_real(t)).value) < 1e-8);
    }
  }
}

TEST_CASE("tail tolerance must be positive") {
  CHECK_THROWS_AS(FourierTransform(cantor4(), 0.0), std::invalid_argument);
}
