#include <doctest.h>

#include <set>

#include "config.hpp"
#include "registry.hpp"
#include "systems.hpp"

using namespace fracspec;
using namespace fracspec::app;
using fracspec::test::q;
using fracspec::test::rv;

TEST_CASE("registry holds exactly the seven named systems") {
  std::set<std::string> names;
  for (const auto& e : registry()) names.insert(e.name);
  CHECK(names == std::set<std::string>{"cantor4", "cantor3", "lambda15", "lambda63", "planar-shear", "twindragon",
                                       "riesz3"});
  CHECK_THROWS_AS(find_example("nope"), ConfigError);
}

TEST_CASE("every registry config parses, builds and round-trips") {
  for (const auto& e : registry()) {
    const SystemConfig c = parse_config(e.config_text, e.name);
    CHECK(c.name == e.name);
    CHECK_NOTHROW(c.system());
    const SystemConfig again = parse_config(format_config(c));
    CHECK(again.R == c.R);
    CHECK(again.B == c.B);
    CHECK(again.L == c.L);
    CHECK(again.p_max == c.p_max);
    CHECK(again.probes == c.probes);
    CHECK(again.weight == c.weight);
    CHECK(again.lattice.has_value() == c.lattice.has_value());
  }
}

TEST_CASE("flat and nested forms, comments and inferred dimension") {
  const SystemConfig c = parse_config(
      "# twin dragon\n"
      "R = [1, 1, -1, 1]   # flat row-major\n"
      "B = [[0, 0], [5, 0]]\n"
      "L = [[0, 0], [1, 0]]\n"
      "probes = [[1/2, 0.5]]\n"
      "seed = 42\n");
  CHECK(c.d == 2);
  CHECK(c.R == test::mat2(1, 1, -1, 1));
  CHECK(c.seed == 42);
  CHECK(c.probes.front() == rv({q(1, 2), q(1, 2)}));
  const SystemConfig d1 = parse_config("R = [[4]]\nB = [0, 2]\nL = [0, 1]\nlattice = [1]\n");
  CHECK(d1.d == 1);
  CHECK(d1.B.size() == 2);
  CHECK(d1.lattice->denominators == std::vector<BigInt>{BigInt(1)});
}

TEST_CASE("config errors name the field") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text).system();
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("B = [0, 2]\nL = [0, 1]\n").find("R") != std::string::npos);
  CHECK(message("R = [[4]]\nB = [0, 2]\nL = [0, 1, 2]\n").find("B/L") != std::string::npos);
  CHECK(message("R = [[4]]\nB = [0, 2]\nL = [0, 1]\ncolour = blue\n").find("colour") != std::string::npos);
  CHECK(message("R = [[4]]\nB = [0, x]\nL = [0, 1]\n").find("B") != std::string::npos);
  CHECK(message("R = [[1, 2], [3]]\nB = [0, 2]\nL = [0, 1]\n").find("R") != std::string::npos);
  CHECK(message("R = [[4]]\nB = [0, 2]\nL = [0, 1]\np_max = 0\n").find("p_max") != std::string::npos);
  CHECK(message("R = [[1/2]]\nB = [0, 2]\nL = [0, 1]\n") != "");
  CHECK(message("R = [[4]]\nB = [0, 2]\nL = [0, 1]\nweight = other\n").find("weight") != std::string::npos);
  CHECK(message("R = [[4]]\nB = [0, 2]\nL = [0, 1\n") != "");
}
