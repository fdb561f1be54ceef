#include <doctest.h>

#include <random>

#include <fracspec/linalg.hpp>
#include <fracspec/rational.hpp>

#include "systems.hpp"

using namespace fracspec;
using fracspec::test::q;
using fracspec::test::rv;

TEST_CASE("parse_rational accepts integers, fractions and decimals exactly") {
  CHECK(parse_rational("7") == q(7));
  CHECK(parse_rational("-3/4") == q(-3, 4));
  CHECK(parse_rational("6/8") == q(3, 4));
  CHECK(parse_rational("0.125") == q(1, 8));
  CHECK(parse_rational("1e-3") == q(1, 1000));
  CHECK(parse_rational(" 2 ") == q(2));
}

TEST_CASE("parse_rational rejects malformed text") {
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("floor and fractional part") {
  CHECK(fracspec::floor(q(-1, 4)) == q(-1));
  CHECK(frac_part(q(-1, 4)) == q(3, 4));
  CHECK(frac_part(q(7, 3)) == q(1, 3));
  CHECK(frac_part(q(5)) == q(0));
  CHECK(is_integer(q(10, 5)));
  CHECK_FALSE(is_integer(q(1, 2)));
}

TEST_CASE("to_string round-trips random rationals") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 5000);
  for (int i = 0; i < 500; ++i) {
    const Rational r(num(rng), den(rng));
    CHECK(parse_rational(to_string(r)) == r);
  }
  CHECK(to_string(q(4, 2)) == "2");
  CHECK(to_string(q(-3, 9)) == "-1/3");
}

TEST_CASE("matrix construction checks sizes") {
  CHECK_THROWS_AS(RatMat(2, {q(1), q(2), q(3)}), std::invalid_argument);
  CHECK_THROWS_AS(RatMat::from_rows({{q(1), q(2)}, {q(3)}}), std::invalid_argument);
  CHECK_THROWS_AS(rv({q(1)}) + rv({q(1), q(2)}), std::invalid_argument);
}

TEST_CASE("mat_pow and exact inverse") {
  const RatMat s = test::mat2(2, 0, 1, 2);
  CHECK(mat_pow(s, 3) == s * s * s);
  CHECK(mat_pow(s, 1) == s);
  CHECK_THROWS(mat_pow(s, 0));
  const RatMat inv = inverse_exact(s);
  CHECK(inv * s == RatMat::identity(2));
  CHECK(inv == RatMat(2, {q(1, 2), q(0), q(-1, 4), q(1, 2)}));
  CHECK_THROWS_AS(inverse_exact(test::mat2(1, 2, 2, 4)), SingularMatrixError);
}

TEST_CASE("solve_exact") {
  const RatMat m = test::mat2(3, 1, 1, 3);
  const RatVec x = solve_exact(m, rv({q(1), q(0)}));
  CHECK(x == rv({q(3, 8), q(-1, 8)}));
  CHECK(m * x == rv({q(1), q(0)}));
}

TEST_CASE("expansivity classification") {
  CHECK(is_expansive(RatMat(1, {q(4)})).expansive);
  const auto dragon = is_expansive(test::mat2(1, 1, -1, 1));
  CHECK(dragon.expansive);
  CHECK(dragon.min_modulus == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_FALSE(is_expansive(RatMat(1, {q(1, 2)})).expansive);
  CHECK_FALSE(is_expansive(RatMat(2, {q(2), q(0), q(0), q(1, 3)})).expansive);
  CHECK_THROWS_AS(is_expansive(RatMat(1, {q(1)})), AmbiguousSpectrumError);
  CHECK_THROWS_AS(is_expansive(test::mat2(0, -1, 1, 0)), AmbiguousSpectrumError);
}

TEST_CASE("operator norm and vector helpers") {
  CHECK(operator_norm(to_real(test::mat2(1, 1, -1, 1))) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm2(RealVec{3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(to_string(rv({q(1, 2), q(-3)})) == "(1/2, -3)");
  CHECK(is_integer(rv({q(2), q(-3)})));
  CHECK_FALSE(is_integer(rv({q(2), q(1, 3)})));
  CHECK(dot(rv({q(1, 2), q(2)}), rv({q(4), q(1, 4)})) == q(5, 2));
}
