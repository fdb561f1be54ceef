#include "registry.hpp"

namespace fracspec::app {
namespace {

std::vector<Rational> rationals(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

std::vector<ExampleEntry> build() {
  std::vector<ExampleEntry> r;

  Golden cantor4;
  cantor4.cycles_p_max = 6;
  cantor4.w_cycles = {{0}};
  cantor4.spectrum_prefix = rationals({0, 1, 4, 5, 16, 17, 20, 21, 64, 65});
  r.push_back({"cantor4", "quarter Cantor measure, scale 4, B={0,2}, L={0,1}",
               "name = cantor4\n"
               "R = [[4]]\n"
               "B = [0, 2]\n"
               "L = [0, 1]\n"
               "p_max = 6\n"
               "lambda_levels = 8\n"
               "probes = [3/10, 1/20, 1/5, 1/7, 1/3]\n",
               cantor4});

  Golden cantor3;
  cantor3.hadamard = false;
  cantor3.cycles_p_max = 6;
  cantor3.w_cycles = {{0}};
  cantor3.cycles_exact = false;
  cantor3.max_clique = 2;
  r.push_back({"cantor3", "middle-third Cantor measure, scale 3, B={0,2}, L={0,1}; not a Hadamard system",
               "name = cantor3\n"
               "R = [[3]]\n"
               "B = [0, 2]\n"
               "L = [0, 1]\n"
               "p_max = 6\n"
               "lambda_levels = 8\n"
               "probes = [3/10]\n",
               cantor3});

  Golden lambda15;
  lambda15.cycles_p_max = 6;
  lambda15.w_cycles = {{0}, {0, 1}};
  lambda15.cycles_exact = false;
  r.push_back({"lambda15", "scale 4, B={0,2}, L={0,15}",
               "name = lambda15\n"
               "R = [[4]]\n"
               "B = [0, 2]\n"
               "L = [0, 15]\n"
               "p_max = 6\n"
               "lambda_levels = 6\n"
               "probes = [3/10]\n",
               lambda15});

  Golden lambda63;
  lambda63.cycles_p_max = 6;
  lambda63.w_cycles = {{0}, {0, 0, 1}};
  lambda63.cycles_exact = false;
  r.push_back({"lambda63", "scale 4, B={0,2}, L={0,63}",
               "name = lambda63\n"
               "R = [[4]]\n"
               "B = [0, 2]\n"
               "L = [0, 63]\n"
               "p_max = 6\n"
               "lambda_levels = 6\n"
               "probes = [3/10]\n",
               lambda63});

  Golden shear;
  shear.cycles_p_max = 4;
  shear.w_cycles = {{0}, {1}, {2}, {3}};
  r.push_back({"planar-shear", "R=[[2,1],[0,2]] with the 4x4 Hadamard matrix at u=i; TZ fails",
               "name = planar-shear\n"
               "R = [[2, 1], [0, 2]]\n"
               "B = [[0, 0], [3, 0], [0, 1], [3, 1]]\n"
               "L = [[0, 0], [1, 0], [0, 1], [1, 1]]\n"
               "p_max = 4\n"
               "lambda_levels = 4\n"
               "lattice = [1, 1]\n"
               "probes = [[1/3, 0]]\n",
               shear});

  Golden dragon;
  dragon.cycles_p_max = 4;
  dragon.w_cycles = {{0}, {1}, {0, 1}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}};
  r.push_back({"twindragon", "R=[[1,1],[-1,1]], B={(0,0),(5,0)}, L={(0,0),(1,0)}; X_L is the twin dragon",
               "name = twindragon\n"
               "R = [[1, 1], [-1, 1]]\n"
               "B = [[0, 0], [5, 0]]\n"
               "L = [[0, 0], [1, 0]]\n"
               "p_max = 8\n"
               "lambda_levels = 10\n"
               "lattice = [5, 5]\n"
               "probes = [[0, 0], [1/2, 1/2], [1/5, -2/5], [3/10, 1/10], [-1/5, -3/5]]\n",
               dragon});

  Golden riesz;
  riesz.cycles_p_max = 4;
  riesz.w_cycles = {};
  r.push_back({"riesz3", "scale-3 circle map with W(t)=(2/3)cos^2(t); invariant measure is a Riesz product",
               "name = riesz3\n"
               "R = [[3]]\n"
               "B = [0, 1, 2]\n"
               "L = [0, 1, 2]\n"
               "weight = riesz\n"
               "p_max = 4\n"
               "lambda_levels = 4\n"
               "probes = [3/10]\n",
               riesz});
  return r;
}

}  // namespace

const std::vector<ExampleEntry>& registry() {
  static const std::vector<ExampleEntry> entries = build();
  return entries;
}

const ExampleEntry& find_example(std::string_view name) {
  for (const auto& e : registry()) {
    if (e.name == name) return e;
  }
  std::string names;
  for (const auto& e : registry()) names += (names.empty() ? "" : ", ") + e.name;
  throw ConfigError("example: unknown name '" + std::string(name) + "' (known: " + names + ")");
}

SystemConfig example_config(std::string_view name) {
  const ExampleEntry& e = find_example(name);
  return parse_config(e.config_text, e.name);
}

}  // namespace fracspec::app
