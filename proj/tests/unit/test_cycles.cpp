#include <doctest.h>

#include <algorithm>
#include <set>

#include <fracspec/cycles.hpp>

#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::test;

namespace {

std::vector<Word> words(const std::vector<Cycle>& cs) {
  std::vector<Word> out;
  for (const auto& c : cs) out.push_back(c.word);
  return out;
}

std::set<RatVec> point_set(const Cycle& c) { return {c.points.begin(), c.points.end()}; }

}  // namespace

TEST_CASE("aperiodic and least-rotation words") {
  const Word a{0, 1}, b{0, 1, 0, 1}, c{1, 0}, d{0, 0, 1}, e{0, 1, 0};
  CHECK(is_aperiodic(a));
  CHECK_FALSE(is_aperiodic(b));
  CHECK(is_least_rotation(a));
  CHECK_FALSE(is_least_rotation(c));
  CHECK(is_least_rotation(d));
  CHECK_FALSE(is_least_rotation(e));
}

TEST_CASE("cycle points solve the closing equation") {
  const Cycle two = make_cycle(scale4(15), {0, 1});
  CHECK(two.points == std::vector<RatVec>{r1(4), r1(1)});
  const Cycle three = make_cycle(scale4(63), {0, 0, 1});
  CHECK(three.points == std::vector<RatVec>{r1(16), r1(4), r1(1)});
  const Cycle r = rotated(three, 1);
  CHECK(r.word == Word{0, 1, 0});
  CHECK(r.points.front() == r1(4));
  CHECK(three.contains(r1(4)));
  CHECK_FALSE(three.contains(r1(2)));
}

TEST_CASE("quarter Cantor has the single W-cycle {0}") {
  const auto w = find_w_cycles(cantor4(), 6);
  REQUIRE(w.size() == 1);
  CHECK(w[0].word == Word{0});
  CHECK(w[0].points.front() == r1(0));
}

TEST_CASE("L = {0,3} has the two fixed W-cycles 0 and 1") {
  const auto w = find_w_cycles(scale4(3), 6);
  REQUIRE(w.size() == 2);
  CHECK(w[0].points.front() == r1(0));
  CHECK(w[1].points.front() == r1(1));
}

TEST_CASE("L = {0,15} and {0,63} contain the longer W-cycles") {
  const auto w15 = find_w_cycles(scale4(15), 6);
  const bool has_14 = std::any_of(w15.begin(), w15.end(), [](const Cycle& c) {
    return point_set(c) == std::set<RatVec>{r1(1), r1(4)};
  });
  CHECK(has_14);
  const auto w63 = find_w_cycles(scale4(63), 6);
  const bool has_16_4_1 = std::any_of(w63.begin(), w63.end(), [](const Cycle& c) {
    return point_set(c) == std::set<RatVec>{r1(16), r1(4), r1(1)};
  });
  CHECK(has_16_4_1);
}

TEST_CASE("planar shear has exactly four fixed W-cycles up to period 4") {
  const auto w = find_w_cycles(planar_shear(), 4);
  REQUIRE(w.size() == 4);
  std::set<RatVec> pts;
  for (const auto& c : w) {
    CHECK(c.period() == 1);
    pts.insert(c.points.front());
  }
  const auto expected = ints2({{0, 0}, {1, -1}, {0, 1}, {1, 0}});
  CHECK(pts == std::set<RatVec>(expected.begin(), expected.end()));
}

TEST_CASE("twin dragon W-cycles up to period 4") {
  const auto w = find_w_cycles(twindragon(), 4);
  CHECK(words(w) == std::vector<Word>{{0}, {1}, {0, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}});
  const Cycle& c0011 = w[4];
  CHECK(point_set(c0011) == std::set<RatVec>{rv({q(2, 5), q(-4, 5)}), rv({q(-1, 5), q(-3, 5)}),
                                             rv({q(-2, 5), q(-1, 5)}), rv({q(1, 5), q(-2, 5)})});
}

TEST_CASE("enumeration counts aperiodic necklaces") {
  // Binary: 2 + 1 + 2 + 3 + 6 + 9; ternary up to 4: 3 + 3 + 8 + 18.
  CHECK(enumerate_cycles(cantor4(), 6).cycles.size() == 23);
  const AffineSystem tern(RatMat(1, {q(3)}), ints1({0, 1, 2}), ints1({0, 1, 2}));
  const CycleEnumeration e = enumerate_cycles(tern, 4);
  CHECK(e.cycles.size() == 32);
  CHECK(e.points_distinct);
  for (const auto& c : e.cycles) {
    CHECK(is_aperiodic(c.word));
    CHECK(is_least_rotation(c.word));
  }
}

TEST_CASE("enumeration does not depend on the thread count") {
  const auto a = enumerate_cycles(twindragon(), 8, 1);
  const auto b = enumerate_cycles(twindragon(), 8, 3);
  REQUIRE(a.cycles.size() == b.cycles.size());
  for (std::size_t i = 0; i < a.cycles.size(); ++i) {
    CHECK(a.cycles[i].word == b.cycles[i].word);
    CHECK(a.cycles[i].points == b.cycles[i].points);
  }
}

TEST_CASE("exact and floating W classification agree") {
  const AffineSystem sys = twindragon();
  for (const auto& c : enumerate_cycles(sys, 6).cycles) {
    const WStatus exact = classify_w(c, std::span<const RatVec>(sys.B()));
    const WStatus fl = classify_w(c, std::span<const RealVec>(sys.B_real()));
    CHECK(exact == fl);
  }
  CHECK(std::string(to_string(WStatus::w_cycle)) == "w_cycle");
}

TEST_CASE("power systems turn p-cycles into fixed points") {
  const AffineSystem sys = scale4(15);
  const AffineSystem p2 = power_system(sys, 2);
  CHECK(p2.size() == 4);
  CHECK(p2.R() == RatMat(1, {q(16)}));
  // Digit (i0, i1) = (0, 1) sits at index 2: l_0 + S l_1 = 60.
  CHECK(p2.L()[2] == r1(60));
  const auto fixed = find_w_cycles(p2, 1);
  std::set<RatVec> pts;
  for (const auto& c : fixed) pts.insert(c.points.front());
  CHECK(pts.count(r1(4)) == 1);
  CHECK(pts.count(r1(1)) == 1);
  CHECK(pts.count(r1(0)) == 1);
}
