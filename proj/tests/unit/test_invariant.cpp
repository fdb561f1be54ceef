#include <doctest.h>

#include <cmath>
#include <numbers>

#include <fracspec/fourier.hpp>
#include <fracspec/invariant.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

namespace {

double partial_integral(unsigned K) {
  long degree = 0, p3 = 1;
  for (unsigned j = 1; j <= K; ++j) {
    p3 *= 3;
    degree += 2 * p3;
  }
  const long m = 2 * degree + 8;
  double s = 0.0;
  for (long i = 0; i < m; ++i) s += riesz_partial_density(2.0 * std::numbers::pi * i / m, K);
  return s * 2.0 * std::numbers::pi / static_cast<double>(m);
}

}  // namespace

TEST_CASE("Riesz partial densities") {
  for (unsigned K : {1u, 3u, 6u}) {
    CHECK(riesz_partial_density(0.0, K) == doctest::Approx(std::pow(2.0, K) / (2.0 * std::numbers::pi)));
  }
  for (double t = 0.0; t < 2.0 * std::numbers::pi; t += 0.01) CHECK(riesz_partial_density(t, 5) >= 0.0);
  for (unsigned K : {1u, 2u, 4u, 8u, 12u}) CHECK(std::abs(partial_integral(K) - 1.0) < 1e-8);
  CHECK_THROWS(riesz_partial_density(0.0, 0));
}

TEST_CASE("Riesz stationary coefficients from the invariance relation") {
  CHECK(riesz_coefficient(0) == 1.0);
  CHECK(riesz_coefficient(1) == 0.0);
  CHECK(riesz_coefficient(2) == 0.5);
  CHECK(riesz_coefficient(-2) == 0.5);
  CHECK(riesz_coefficient(3) == 0.0);
  CHECK(riesz_coefficient(6) == 0.5);
  CHECK(riesz_coefficient(8) == 0.25);
  CHECK(riesz_coefficient(12) == 0.25);
  CHECK(riesz_coefficient(5) == 0.0);
}

TEST_CASE("Riesz chain: coefficients, invariance and reproducibility") {
  const ChainSample s = riesz_chain({200000, 1000, 17, 4, 2});
  CHECK(s.states.size() == 200000);
  for (int k : {1, 2, 3, 6, 8, 12}) {
    const FourierCoefficient c = fourier_coefficient(s, k);
    CHECK(std::abs(c.value.real() - riesz_coefficient(k)) < 4.0 * c.std_error_re);
    CHECK(std::abs(c.value.imag()) < 4.0 * c.std_error_im);
  }
  const ChainSample again = riesz_chain({200000, 1000, 17, 4, 1});
  CHECK(again.states == s.states);
  for (const auto& f : std::vector<std::function<double(const RealVec&)>>{
           [](const RealVec& x) { return std::cos(2.0 * std::numbers::pi * x[0]); },
           [](const RealVec& x) { return std::sin(6.0 * std::numbers::pi * x[0]); },
           [](const RealVec& x) { return x[0] * x[0]; }}) {
    const ChainSample xs = run_chain(riesz_weight(), riesz_view(), RealVec{0.1}, {100000, 1000, 5, 4, 1});
    const InvarianceCheck ic = invariance_check(riesz_weight(), riesz_view(), xs, f);
    CHECK(std::abs(ic.mean_rf - ic.mean_f) < 4.0 * ic.std_error + 1e-12);
  }
}

TEST_CASE("uniform weights sample the B-measure") {
  const AffineSystem sys = cantor4();
  const ChainSample s = run_chain(Weight::constant(0.5), sys.b_view(), RealVec{0.0}, {100000, 100, 3, 1, 1});
  const FourierTransform ft(sys);
  for (double t : {0.3, 1.7, 5.0}) {
    std::complex<double> emp = 0.0;
    for (const auto& x : s.states) emp += std::exp(std::complex<double>(0.0, 2.0 * std::numbers::pi * t * x[0]));
    emp /= static_cast<double>(s.states.size());
    CHECK(std::abs(emp - ft(RealVec{t}).value) < 3.0 / std::sqrt(static_cast<double>(s.states.size())));
  }
}

TEST_CASE("a single map collapses the chain to its fixed point") {
  const IfsView one(RatMat(1, {q(3)}), {r1(2)});
  const ChainSample s = run_chain(Weight::constant(1.0), one, RealVec{5.0}, {500, 100, 1, 1, 1});
  CHECK(s.states.back()[0] == doctest::Approx(1.0));
}

TEST_CASE("batch means, histograms, concentration and KS") {
  std::vector<double> v(3200);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 2);
  const MeanEstimate m = batch_means(v);
  CHECK(m.mean == doctest::Approx(0.5));
  CHECK(m.std_error < 1e-12);

  ChainSample s;
  for (int i = 0; i < 100; ++i) s.states.push_back(RealVec{i / 100.0});
  const auto h = histogram(s, 10, 0.0, 1.0);
  CHECK(h == std::vector<std::size_t>(10, 10));
  const std::vector<double> qs{0.1, 0.5, 1.0};
  const auto c = concentration_curve(h, qs);
  CHECK(c[0] == doctest::Approx(0.1));
  CHECK(c[1] == doctest::Approx(0.5));
  CHECK(c[2] == doctest::Approx(1.0));
  const std::vector<std::size_t> spike{0, 0, 90, 10};
  CHECK(concentration_curve(spike, std::vector<double>{0.25})[0] == doctest::Approx(0.9));

  CHECK(ks_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_statistic({1, 2, 3}, {4, 5, 6}) == 1.0);
}
