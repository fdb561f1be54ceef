#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <fracspec/cycles.hpp>
#include <fracspec/fourier.hpp>
#include <fracspec/hadamard.hpp>
#include <fracspec/ifs.hpp>
#include <fracspec/invariant.hpp>
#include <fracspec/pathspace.hpp>
#include <fracspec/spectrum.hpp>
#include <fracspec/transfer.hpp>

#include "config.hpp"
#include "registry.hpp"

namespace fracspec::app {
namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string example;
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> p_max;
  std::optional<unsigned> levels;
  unsigned threads = 1;
};

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Result {
  json report;
  int code = kOk;
  std::optional<Csv> csv;
};

/// Check failure carrying its own message (exit 1).
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num17(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

json exact(const RatVec& v) {
  json a = json::array();
  for (const auto& c : v) a.push_back(to_string(c));
  return a;
}

json exact_list(const std::vector<RatVec>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(exact(v));
  return a;
}

json word_json(const Word& w) {
  json a = json::array();
  for (auto l : w) a.push_back(l);
  return a;
}

json real_vec(const RealVec& v) {
  json a = json::array();
  for (double x : v) a.push_back(x);
  return a;
}

RatVec parse_point(const std::string& flag, const std::string& text, std::size_t d) {
  RatVec v;
  std::vector<Rational> coords;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string part = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      coords.push_back(parse_rational(part));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(flag + ": " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (coords.size() != d) {
    throw ConfigError(flag + ": point '" + text + "' has " + std::to_string(coords.size()) + " coordinates, expected " +
                      std::to_string(d));
  }
  return RatVec(std::move(coords));
}

std::vector<RatVec> points_or(const std::string& flag, const std::vector<std::string>& texts,
                              const std::vector<RatVec>& fallback, std::size_t d) {
  if (texts.empty()) return fallback;
  std::vector<RatVec> out;
  for (const auto& t : texts) out.push_back(parse_point(flag, t, d));
  return out;
}

SystemConfig resolve(const Common& c) {
  if (c.example.empty() == c.config_path.empty()) {
    throw ConfigError("exactly one of --example NAME or --config PATH is required");
  }
  SystemConfig cfg = c.example.empty() ? load_config(c.config_path) : example_config(c.example);
  if (c.seed) cfg.seed = *c.seed;
  if (c.p_max) {
    if (*c.p_max == 0 || *c.p_max > 32) throw ConfigError("--p-max: must be in [1, 32]");
    cfg.p_max = *c.p_max;
  }
  if (c.levels) cfg.lambda_levels = *c.levels;
  return cfg;
}

Weight weight_for(const SystemConfig& cfg, const AffineSystem& sys) {
  return cfg.weight == WeightKind::riesz ? riesz_weight() : Weight::from_digits(sys.B_real());
}

json cycle_json(const Cycle& c) {
  json j;
  j["word"] = word_json(c.word);
  j["period"] = c.period();
  j["points"] = exact_list(c.points);
  j["is_w_cycle"] = c.is_w_cycle();
  j["status"] = to_string(c.status);
  return j;
}

WStatus classify_with_weight(const Cycle& c, const Weight& W, double tol) {
  double worst = 0.0;
  for (const auto& x : c.points) worst = std::max(worst, std::abs(W(to_real(x)) - 1.0));
  if (worst < tol) return WStatus::w_cycle;
  if (worst <= 1e-6) return WStatus::inconclusive;
  return WStatus::not_w_cycle;
}

// All cycles up to p_max, classified for the configured weight.
std::vector<Cycle> classified_cycles(const SystemConfig& cfg, const AffineSystem& sys, unsigned threads,
                                     bool* points_distinct = nullptr) {
  CycleEnumeration e = enumerate_cycles(sys, cfg.p_max, threads);
  if (points_distinct) *points_distinct = e.points_distinct;
  const Weight W = weight_for(cfg, sys);
  for (auto& c : e.cycles) {
    c.status = cfg.weight == WeightKind::digits ? classify_w(c, sys.B()) : classify_with_weight(c, W, cfg.cycle_tol);
  }
  return std::move(e.cycles);
}

std::vector<Cycle> w_cycles_of(const SystemConfig& cfg, const AffineSystem& sys, unsigned threads) {
  std::vector<Cycle> out;
  for (auto& c : classified_cycles(cfg, sys, threads)) {
    if (c.is_w_cycle()) out.push_back(std::move(c));
  }
  if (out.empty()) throw CheckFailure("no W-cycles found up to p_max " + std::to_string(cfg.p_max));
  return out;
}

// Sort by squared norm, then lexicographically.
std::vector<RatVec> by_norm(std::vector<RatVec> v) {
  auto key = [](const RatVec& x) {
    Rational s = 0;
    for (const auto& c : x) s += c * c;
    return s;
  };
  std::stable_sort(v.begin(), v.end(), [&](const RatVec& a, const RatVec& b) {
    const Rational ka = key(a), kb = key(b);
    return ka != kb ? ka < kb : a < b;
  });
  return v;
}

json header(const std::string& command, const SystemConfig& cfg) {
  json j;
  j["command"] = command;
  j["system"] = cfg.name;
  j["d"] = cfg.d;
  j["N"] = cfg.B.size();
  return j;
}

// ---------------------------------------------------------------- commands

Result cmd_check_hadamard(const SystemConfig& cfg, const Common&) {
  const AffineSystem sys = cfg.system();
  const DualityReport rep = check_duality(sys);
  Result r;
  r.report = header("check-hadamard", cfg);
  r.report["passes"] = rep.passes;
  r.report["expansive"] = {{"passes", rep.expansivity.expansive},
                           {"min_modulus", rep.expansivity.min_modulus},
                           {"margin", rep.expansivity.margin}};
  r.report["unitarity"] = {{"passes", rep.unitarity.passes},
                           {"max_deviation", rep.unitarity.max_deviation},
                           {"tol", sys.unitarity_tol()},
                           {"n", rep.unitarity.n}};
  r.report["integrality"] = {{"passes", rep.integrality.passes},
                             {"proven", rep.integrality.proven},
                             {"horizon", rep.integrality.horizon},
                             {"detail", rep.integrality.detail}};
  r.report["zero_in_B"] = rep.zero_in_B;
  r.report["zero_in_L"] = rep.zero_in_L;
  r.report["failures"] = rep.failures;
  r.code = rep.passes ? kOk : kCheckFailed;
  return r;
}

Result cmd_cycles(const SystemConfig& cfg, const Common& common, bool all) {
  const AffineSystem sys = cfg.system();
  bool distinct = true;
  const std::vector<Cycle> cycles = classified_cycles(cfg, sys, common.threads, &distinct);
  Result r;
  r.report = header("cycles", cfg);
  r.report["p_max"] = cfg.p_max;
  r.report["cycles_enumerated"] = cycles.size();
  r.report["points_distinct"] = distinct;
  json list = json::array();
  Csv csv{{"cycle", "period", "is_w_cycle", "index"}, {}};
  for (std::size_t a = 0; a < cfg.d; ++a) csv.header.push_back("x" + std::to_string(a));
  std::size_t n_w = 0;
  for (const auto& c : cycles) {
    if (c.is_w_cycle()) ++n_w;
    if (!all && !c.is_w_cycle()) continue;
    const std::size_t id = list.size();
    list.push_back(cycle_json(c));
    for (std::size_t k = 0; k < c.points.size(); ++k) {
      std::vector<std::string> row{std::to_string(id), std::to_string(c.period()), c.is_w_cycle() ? "1" : "0",
                                   std::to_string(k)};
      for (const auto& x : c.points[k]) row.push_back(num17(to_double(x)));
      csv.rows.push_back(std::move(row));
    }
  }
  r.report["w_cycle_count"] = n_w;
  r.report[all ? "cycles" : "w_cycles"] = list;
  r.csv = std::move(csv);
  if (n_w == 0) {
    r.report["error"] = "no W-cycles found up to p_max " + std::to_string(cfg.p_max);
    r.code = kCheckFailed;
  }
  return r;
}

Result cmd_spectrum(const SystemConfig& cfg, const Common& common, std::size_t limit, const std::string& box) {
  const AffineSystem sys = cfg.system();
  const std::vector<Cycle> wc = w_cycles_of(cfg, sys, common.threads);
  const SpectrumSet s = generate_lambda(sys, wc, cfg.lambda_levels);
  std::vector<RatVec> shown;
  if (!box.empty()) {
    Rational h;
    try {
      h = parse_rational(box);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--box: ") + e.what());
    }
    shown = window(s.elements, -h, h);
  } else {
    shown = sorted(s.elements);
  }
  Result r;
  r.report = header("spectrum", cfg);
  r.report["levels"] = s.level;
  r.report["size"] = s.size();
  r.report["cap"] = s.cap;
  r.report["capped"] = s.capped;
  r.report["w_cycles"] = wc.size();
  r.report["seeds"] = exact_list(s.seeds);
  if (cfg.d == 1) {
    json prefix = json::array();
    for (const auto& q : smallest_nonnegative(s.elements, 10)) prefix.push_back(to_string(q));
    r.report["smallest_nonnegative"] = prefix;
  }
  if (!box.empty()) r.report["box"] = box;
  r.report["shown"] = std::min(limit, shown.size());
  std::vector<RatVec> head(shown.begin(), shown.begin() + static_cast<std::ptrdiff_t>(std::min(limit, shown.size())));
  r.report["elements"] = exact_list(head);
  Csv csv;
  for (std::size_t a = 0; a < cfg.d; ++a) csv.header.push_back("x" + std::to_string(a));
  for (const auto& e : shown) {
    std::vector<std::string> row;
    for (const auto& c : e) row.push_back(num17(to_double(c)));
    csv.rows.push_back(std::move(row));
  }
  r.csv = std::move(csv);
  return r;
}

Result cmd_verify_onb(const SystemConfig& cfg, const Common& common, std::size_t count,
                      const std::vector<std::string>& xs, long grid_radius, long grid_den, long lattice_radius) {
  const AffineSystem sys = cfg.system();
  const std::vector<RatVec> probes = points_or("--x", xs, cfg.probes, cfg.d);
  const DualityReport dual = check_duality(sys);
  Result r;
  r.report = header("verify-onb", cfg);
  r.report["hadamard"] = dual.passes;
  Csv csv{{"probe", "stage", "size", "completeness_sum"}, {}};

  if (dual.passes) {
    const std::vector<Cycle> wc = w_cycles_of(cfg, sys, common.threads);
    const SpectrumSet s = generate_lambda(sys, wc, cfg.lambda_levels);
    std::vector<RatVec> all = by_norm(s.elements);
    std::vector<RatVec> head(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(std::min(count, all.size())));
    const GramReport g = verify_orthogonality(sys, head, cfg.tail_tol, common.threads);
    r.report["mode"] = "spectrum";
    r.report["levels"] = s.level;
    r.report["lambda_size"] = s.size();
    r.report["gram"] = {{"elements", head.size()},
                        {"max_offdiag", g.max_offdiag},
                        {"argmax", head.size() > 1 ? json::array({exact(head[g.argmax_i]), exact(head[g.argmax_j])})
                                                   : json::array()},
                        {"pairs", g.pairs},
                        {"exact_zero_pairs", g.exact_zero_pairs}};
    bool ok = g.max_offdiag < 1e-8;
    json comp = json::array();
    for (std::size_t p = 0; p < probes.size(); ++p) {
      json levels = json::array();
      double prev = -1.0;
      bool monotone = true;
      double last = 0.0;
      for (unsigned lvl = 0; lvl <= s.level; ++lvl) {
        const auto elems = s.up_to_level(lvl);
        last = completeness_sum(sys, elems, probes[p], cfg.tail_tol);
        monotone = monotone && last >= prev - 1e-15;
        prev = last;
        levels.push_back(last);
        csv.rows.push_back({std::to_string(p), std::to_string(lvl), std::to_string(elems.size()), num17(last)});
      }
      const bool in_range = last >= 0.999 && last <= 1.0 + 1e-6;
      ok = ok && in_range && monotone;
      json entry{{"x", exact(probes[p])},
                 {"by_level", levels},
                 {"completeness_sum", last},
                 {"monotone", monotone},
                 {"within_bounds", in_range}};
      if (cfg.lattice) {
        const auto win = cfg.lattice->window(lattice_radius);
        entry["lattice_parseval"] = {{"radius", lattice_radius},
                                     {"points", win.size()},
                                     {"sum", completeness_sum(sys, win, probes[p], cfg.tail_tol)}};
      }
      comp.push_back(entry);
    }
    r.report["completeness"] = comp;
    r.report["passes"] = ok;
    r.code = ok ? kOk : kCheckFailed;
  } else {
    if (cfg.d != 1) throw ConfigError("verify-onb: the orthogonality-graph search for non-dual systems needs d = 1");
    if (grid_den <= 0 || grid_radius < 0) throw ConfigError("--grid-den/--grid-radius: must be positive");
    std::vector<RatVec> grid;
    for (long k = 0; k <= grid_radius; ++k) {
      grid.push_back(RatVec{Rational(k, grid_den)});
      if (k) grid.push_back(RatVec{Rational(-k, grid_den)});
    }
    // grid is ordered by |k|, then k ascending within each |k|.
    for (std::size_t i = 1; i + 1 < grid.size(); i += 2) std::swap(grid[i], grid[i + 1]);
    const auto clique = max_orthogonal_clique(sys, grid, cfg.tail_tol, common.threads);
    const auto family = greedy_orthogonal_family(sys, grid, cfg.tail_tol);
    r.report["mode"] = "orthogonality_graph";
    r.report["grid"] = {{"denominator", grid_den}, {"radius", grid_radius}, {"size", grid.size()}};
    r.report["max_orthogonal_clique"] = clique.size();
    r.report["clique"] = exact_list(clique);
    r.report["greedy_family"] = exact_list(family);
    json comp = json::array();
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const auto partial = completeness_partials(sys, family, probes[p], cfg.tail_tol);
      for (std::size_t i = 0; i < partial.size(); ++i) {
        csv.rows.push_back({std::to_string(p), std::to_string(i), std::to_string(i + 1), num17(partial[i])});
      }
      comp.push_back({{"x", exact(probes[p])}, {"partials", partial},
                      {"completeness_sum", partial.empty() ? 0.0 : partial.back()}});
    }
    r.report["completeness"] = comp;
    r.report["passes"] = false;
    r.report["reason"] = "not a Hadamard duality system; no orthonormal basis of exponentials is certified";
    r.code = kCheckFailed;
  }
  r.csv = std::move(csv);
  return r;
}

Result cmd_mu_hat(const SystemConfig& cfg, const Common&, const std::vector<std::string>& ts) {
  const AffineSystem sys = cfg.system();
  const std::vector<RatVec> points = points_or("--t", ts, cfg.probes, cfg.d);
  if (points.empty()) throw ConfigError("--t: no points given and the config has no probes");
  const FourierTransform ft(sys, cfg.tail_tol);
  const RatMat s_inv = inverse_exact(sys.S());
  Result r;
  r.report = header("mu-hat", cfg);
  r.report["tail_tol"] = cfg.tail_tol;
  json vals = json::array();
  Csv csv{{}, {}};
  for (std::size_t a = 0; a < cfg.d; ++a) csv.header.push_back("t" + std::to_string(a));
  for (const char* h : {"re", "im", "abs", "exact_zero"}) csv.header.push_back(h);
  for (const auto& t : points) {
    const FourierValue v = ft(t);
    const RatVec y = s_inv * t;
    const std::complex<double> refined =
        m_eval(std::span<const RatVec>(sys.B()), y) / std::sqrt(static_cast<double>(sys.size())) * ft(y).value;
    vals.push_back({{"t", exact(t)},
                    {"re", v.value.real()},
                    {"im", v.value.imag()},
                    {"abs", std::abs(v.value)},
                    {"exact_zero", v.exact_zero},
                    {"factors", v.factors},
                    {"refinement_residual", std::abs(v.value - refined)}});
    std::vector<std::string> row;
    for (const auto& c : t) row.push_back(num17(to_double(c)));
    row.push_back(num17(v.value.real()));
    row.push_back(num17(v.value.imag()));
    row.push_back(num17(std::abs(v.value)));
    row.push_back(v.exact_zero ? "1" : "0");
    csv.rows.push_back(std::move(row));
  }
  r.report["values"] = vals;
  r.csv = std::move(csv);
  return r;
}

Result cmd_attractor(const SystemConfig& cfg, const Common& common, std::size_t samples, const std::string& which,
                     double cell) {
  const AffineSystem sys = cfg.system();
  if (which != "B" && which != "L") throw ConfigError("--view: expected B or L");
  const IfsView& view = which == "B" ? sys.b_view() : sys.l_view();
  if (samples == 0) throw ConfigError("--samples: must be >= 1");
  const auto pts = chaos_game(view, samples, cfg.seed, common.threads);
  RealVec lo(cfg.d, std::numeric_limits<double>::infinity());
  RealVec hi(cfg.d, -std::numeric_limits<double>::infinity());
  double max_norm = 0.0;
  for (const auto& p : pts) {
    for (std::size_t a = 0; a < cfg.d; ++a) {
      lo[a] = std::min(lo[a], p[a]);
      hi[a] = std::max(hi[a], p[a]);
    }
    max_norm = std::max(max_norm, norm2(p));
  }
  Result r;
  r.report = header("attractor", cfg);
  r.report["view"] = which;
  r.report["samples"] = samples;
  r.report["seed"] = cfg.seed;
  r.report["radius_bound"] = view.attractor_radius();
  r.report["max_norm"] = max_norm;
  r.report["inside_ball"] = max_norm <= view.attractor_radius() * (1.0 + 1e-12);
  r.report["bbox_lo"] = real_vec(lo);
  r.report["bbox_hi"] = real_vec(hi);
  if (cell <= 0.0) cell = std::max(view.attractor_radius(), 1e-12) / 100.0;
  std::set<std::vector<long long>> occupied;
  for (const auto& p : pts) {
    std::vector<long long> key(cfg.d);
    for (std::size_t a = 0; a < cfg.d; ++a) key[a] = static_cast<long long>(std::floor(p[a] / cell));
    occupied.insert(std::move(key));
  }
  r.report["cell"] = cell;
  r.report["occupied_cells"] = occupied.size();
  r.report["occupancy_measure"] = static_cast<double>(occupied.size()) * std::pow(cell, static_cast<double>(cfg.d));
  Csv csv;
  for (std::size_t a = 0; a < cfg.d; ++a) csv.header.push_back("x" + std::to_string(a));
  for (const auto& p : pts) {
    std::vector<std::string> row;
    for (double v : p) row.push_back(num17(v));
    csv.rows.push_back(std::move(row));
  }
  r.csv = std::move(csv);
  return r;
}

struct HarmonicOptions {
  std::vector<std::string> xs;
  std::size_t paths = 100000;
  std::size_t length = 64;
  unsigned depth = 0;
  double prune = 1e-9;
  std::size_t cesaro = 0;
  std::size_t resolution = 0;
  long lattice_radius = 8;
};

Result cmd_harmonic(const SystemConfig& cfg, const Common& common, const HarmonicOptions& o) {
  const AffineSystem sys = cfg.system();
  const std::vector<RatVec> probes = points_or("--x", o.xs, cfg.probes, cfg.d);
  if (probes.empty()) throw ConfigError("--x: no points given and the config has no probes");
  if (o.paths == 0 || o.length == 0) throw ConfigError("--paths/--length: must be >= 1");
  const std::vector<Cycle> wc = w_cycles_of(cfg, sys, common.threads);
  const Weight W = weight_for(cfg, sys);
  Result r;
  r.report = header("harmonic", cfg);
  r.report["seed"] = cfg.seed;
  r.report["paths"] = o.paths;
  r.report["length"] = o.length;
  r.report["prune_below"] = o.prune;
  json wl = json::array();
  for (const auto& c : wc) wl.push_back(cycle_json(c));
  r.report["w_cycles"] = wl;
  Csv csv{{"probe", "cycle", "mc", "mc_std_error", "closed_form", "unresolved"}, {}};
  json out = json::array();
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const RealVec x = to_real(probes[p]);
    const HEstimate est = estimate_h(W, sys.l_view(), x, wc, o.length, o.paths, cfg.seed + p, common.threads);
    json per = json::array();
    double cf_total = 0.0;
    double unresolved_total = 0.0;
    bool agree_all = true;
    for (std::size_t c = 0; c < wc.size(); ++c) {
      json e{{"word", word_json(wc[c].word)},
             {"mc", est.per_cycle[c].probability},
             {"mc_std_error", est.per_cycle[c].std_error}};
      std::string cf_text, un_text;
      if (cfg.weight == WeightKind::digits) {
        const unsigned depth = o.depth ? o.depth : std::max<unsigned>(1, 16 / static_cast<unsigned>(wc[c].period()));
        const HClosedForm cf = h_closed_form(sys, probes[p], wc[c], depth, o.prune, cfg.tail_tol);
        const bool agree = std::abs(est.per_cycle[c].probability - cf.value) <= 3.0 * est.per_cycle[c].std_error;
        agree_all = agree_all && agree;
        cf_total += cf.value;
        unresolved_total += cf.unresolved;
        e["closed_form"] = cf.value;
        e["closed_form_depth"] = depth;
        e["closed_form_terms"] = cf.terms;
        e["unresolved"] = cf.unresolved;
        e["agree_3sigma"] = agree;
        cf_text = num17(cf.value);
        un_text = num17(cf.unresolved);
      }
      per.push_back(e);
      csv.rows.push_back({std::to_string(p), std::to_string(c), num17(est.per_cycle[c].probability),
                          num17(est.per_cycle[c].std_error), cf_text, un_text});
    }
    json entry{{"x", exact(probes[p])},
               {"per_cycle", per},
               {"sum_mc", est.total},
               {"sum_mc_std_error", est.total_std_error},
               {"unclassified", est.unclassified},
               {"epsilon", est.epsilon},
               {"partition_within_0.02", std::abs(est.total - 1.0) <= 0.02}};
    if (cfg.weight == WeightKind::digits) {
      entry["sum_closed_form"] = cf_total;
      entry["unresolved"] = unresolved_total;
      entry["estimators_agree"] = agree_all;
    }
    if (cfg.lattice && cfg.weight == WeightKind::digits) {
      const auto win = cfg.lattice->window(o.lattice_radius);
      entry["lattice_parseval"] = {{"radius", o.lattice_radius},
                                   {"points", win.size()},
                                   {"sum", completeness_sum(sys, win, probes[p], cfg.tail_tol)}};
    }
    out.push_back(entry);
  }
  r.report["probes"] = out;

  if (o.cesaro > 0) {
    GridFunction f = make_grid(sys.l_view(), o.resolution);
    const RealVec x0 = to_real(wc.front().points.front());
    const double width = std::max(sys.l_view().attractor_radius(), 1e-3) / 4.0;
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::max(0.0, 1.0 - norm2(f.node(i) - x0) / width);
    const std::size_t early = std::max<std::size_t>(1, o.cesaro / 16);
    const GridFunction h_early = cesaro(W, sys.l_view(), f, early, Averaging::cesaro, common.threads);
    const GridFunction h = cesaro(W, sys.l_view(), f, o.cesaro, Averaging::cesaro, common.threads);
    json probe_vals = json::array();
    for (const auto& p : probes) probe_vals.push_back(h.interpolate(to_real(p)));
    r.report["cesaro"] = {{"iterations", o.cesaro},
                          {"resolution", f.resolution()},
                          {"bump_center", exact(wc.front().points.front())},
                          {"value_at_center", h.interpolate(x0)},
                          {"values_at_probes", probe_vals},
                          {"harmonic_defect", harmonic_defect(W, sys.l_view(), h, common.threads)},
                          {"harmonic_defect_early", harmonic_defect(W, sys.l_view(), h_early, common.threads)},
                          {"early_iterations", early}};
  }
  r.csv = std::move(csv);
  return r;
}

struct RieszOptions {
  std::size_t steps = 1000000;
  std::size_t burn_in = 1000;
  std::size_t chains = 8;
  unsigned K = 6;
  std::size_t bins = 729;
};

// (1/2pi) int exp(-ikt) prod_{j<=K}(1 + cos(2 3^j t)) dt, by an exact-order
// trapezoid rule on a grid finer than the polynomial degree.
double riesz_partial_coefficient(int k, unsigned K) {
  long degree = 0;
  long p3 = 1;
  for (unsigned j = 1; j <= K; ++j) {
    p3 *= 3;
    degree += 2 * p3;
  }
  const long m = 4 * (degree + std::abs(k)) + 16;
  double s = 0.0;
  for (long i = 0; i < m; ++i) {
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(m);
    s += std::cos(k * t) * riesz_partial_density(t, K) * 2.0 * std::numbers::pi;
  }
  return s / static_cast<double>(m);
}

Result cmd_riesz(const SystemConfig& cfg, const Common& common, const RieszOptions& o) {
  if (o.steps < 64) throw ConfigError("--steps: must be >= 64");
  if (o.chains == 0) throw ConfigError("--chains: must be >= 1");
  if (o.K == 0) throw ConfigError("--K: must be >= 1");
  const Weight W = riesz_weight();
  double norm_dev = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double t = 2.0 * std::numbers::pi * i / 1000.0;
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double branch = (t + 2.0 * std::numbers::pi * j) / 3.0;
      s += 2.0 / 3.0 * std::cos(branch) * std::cos(branch);
    }
    norm_dev = std::max(norm_dev, std::abs(s - 1.0));
  }
  const ChainSample chain = riesz_chain({o.steps, o.burn_in, cfg.seed, o.chains, common.threads});
  Result r;
  r.report = header("riesz", cfg);
  r.report["seed"] = cfg.seed;
  r.report["steps"] = o.steps;
  r.report["burn_in"] = o.burn_in;
  r.report["chains"] = o.chains;
  r.report["branch_normalization_max_deviation"] = norm_dev;
  bool ok = norm_dev < 1e-12;
  json coeffs = json::array();
  for (int k : {1, 2, 3, 6, 12, 18}) {
    const FourierCoefficient c = fourier_coefficient(chain, k);
    const double predicted = riesz_coefficient(k);
    const double partial = riesz_partial_coefficient(k, o.K);
    const double z = std::abs(c.value.real() - predicted) / std::max(c.std_error_re, 1e-300);
    const bool pass = std::abs(c.value.real() - predicted) <= 4.0 * c.std_error_re &&
                      std::abs(c.value.imag()) <= 4.0 * c.std_error_im + 1e-12;
    ok = ok && pass;
    coeffs.push_back({{"k", k},
                      {"re", c.value.real()},
                      {"im", c.value.imag()},
                      {"std_error_re", c.std_error_re},
                      {"std_error_im", c.std_error_im},
                      {"predicted", predicted},
                      {"partial_product", partial},
                      {"z", z},
                      {"within_4_std_error", pass}});
  }
  r.report["partial_product_order"] = o.K;
  r.report["coefficients"] = coeffs;

  std::vector<double> a, b;
  for (std::size_t i = 0; i < chain.states.size(); i += 97) {
    const double t = chain.states[i][0];
    a.push_back(t);
    b.push_back(std::fmod(3.0 * t, 2.0 * std::numbers::pi));
  }
  const double ks = ks_statistic(a, b);
  const double n = static_cast<double>(a.size());
  const double threshold = 1.628 * std::sqrt(2.0 / n);
  r.report["r_invariance"] = {{"ks_statistic", ks}, {"threshold_alpha_0.01", threshold}, {"thinning", 97},
                              {"passes", ks < threshold}};

  const auto counts = histogram(chain, o.bins, 0.0, 2.0 * std::numbers::pi);
  const std::vector<double> qs{0.01, 0.05, 0.1, 0.25, 0.5};
  const auto conc = concentration_curve(counts, qs);
  json curve = json::array();
  for (std::size_t i = 0; i < qs.size(); ++i) curve.push_back({{"q", qs[i]}, {"mass", conc[i]}});
  r.report["concentration_curve"] = curve;
  r.report["passes"] = ok;
  r.code = ok ? kOk : kCheckFailed;

  Csv csv{{"bin_lo", "bin_hi", "count", "density"}, {}};
  const double width = 2.0 * std::numbers::pi / static_cast<double>(o.bins);
  const double total = static_cast<double>(chain.states.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    csv.rows.push_back({num17(width * static_cast<double>(i)), num17(width * static_cast<double>(i + 1)),
                        std::to_string(counts[i]), num17(static_cast<double>(counts[i]) / (total * width))});
  }
  r.csv = std::move(csv);
  return r;
}

Result cmd_example(const std::string& name, const Common& common) {
  Result r;
  if (name.empty()) {
    json list = json::array();
    for (const auto& e : registry()) list.push_back({{"name", e.name}, {"summary", e.summary}});
    r.report["command"] = "example";
    r.report["examples"] = list;
    return r;
  }
  const ExampleEntry& e = find_example(name);
  SystemConfig cfg = parse_config(e.config_text, e.name);
  const AffineSystem sys = cfg.system();
  r.report = header("example", cfg);
  r.report["summary"] = e.summary;
  r.report["config"] = format_config(cfg);
  json checks = json::array();
  bool ok = true;
  auto check = [&](const std::string& what, bool pass, json detail) {
    ok = ok && pass;
    checks.push_back({{"check", what}, {"passes", pass}, {"detail", std::move(detail)}});
  };

  const DualityReport dual = check_duality(sys);
  check("hadamard", dual.passes == e.golden.hadamard,
        {{"expected", e.golden.hadamard}, {"actual", dual.passes}, {"max_deviation", dual.unitarity.max_deviation}});

  SystemConfig at_p = cfg;
  at_p.p_max = e.golden.cycles_p_max;
  std::vector<Word> found;
  for (const auto& c : classified_cycles(at_p, sys, common.threads)) {
    if (c.is_w_cycle()) found.push_back(c.word);
  }
  bool cycles_ok = true;
  for (const auto& w : e.golden.w_cycles) {
    cycles_ok = cycles_ok && std::find(found.begin(), found.end(), w) != found.end();
  }
  if (e.golden.cycles_exact) cycles_ok = cycles_ok && found.size() == e.golden.w_cycles.size();
  json expected_words = json::array(), found_words = json::array();
  for (const auto& w : e.golden.w_cycles) expected_words.push_back(word_json(w));
  for (const auto& w : found) found_words.push_back(word_json(w));
  check("w_cycles", cycles_ok,
        {{"p_max", e.golden.cycles_p_max}, {"exact", e.golden.cycles_exact}, {"expected", expected_words},
         {"found", found_words}});

  if (!e.golden.spectrum_prefix.empty()) {
    SystemConfig at_l = cfg;
    at_l.p_max = e.golden.cycles_p_max;
    const SpectrumSet s = generate_lambda(sys, w_cycles_of(at_l, sys, common.threads), e.golden.spectrum_levels);
    const auto prefix = smallest_nonnegative(s.elements, e.golden.spectrum_prefix.size());
    json got = json::array(), want = json::array();
    for (const auto& q : prefix) got.push_back(to_string(q));
    for (const auto& q : e.golden.spectrum_prefix) want.push_back(to_string(q));
    check("spectrum_prefix", prefix == e.golden.spectrum_prefix,
          {{"levels", e.golden.spectrum_levels}, {"expected", want}, {"found", got}});
  }
  if (e.golden.max_clique) {
    std::vector<RatVec> grid;
    for (long k = -100; k <= 100; ++k) grid.push_back(RatVec{Rational(k, 4)});
    const auto clique = max_orthogonal_clique(sys, grid, cfg.tail_tol, common.threads);
    check("max_orthogonal_clique", clique.size() == *e.golden.max_clique,
          {{"expected", *e.golden.max_clique}, {"found", clique.size()}});
  }
  if (cfg.weight == WeightKind::riesz || dual.passes) {
    const Weight W = weight_for(cfg, sys);
    const double dev = check_qmf(W, sys.l_view(), 10000, cfg.seed);
    check("qmf", dev < 1e-12, {{"max_deviation", dev}});
  }
  r.report["checks"] = checks;
  r.report["passes"] = ok;
  r.code = ok ? kOk : kCheckFailed;
  return r;
}

void write_csv(const std::string& path, const Csv& csv) {
  std::ofstream f(path);
  if (!f) throw ConfigError("--out: cannot open '" + path + "' for writing");
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) f << (i ? "," : "") << cells[i];
    f << "\n";
  };
  line(csv.header);
  for (const auto& row : csv.rows) line(row);
}

constexpr const char* kCsvHelp =
    "CSV (--out): one header row, comma separated, floats at 17 significant digits.\n"
    "  cycles:     cycle,period,is_w_cycle,index,x0..x{d-1}  (one row per cycle point)\n"
    "  spectrum:   x0..x{d-1}  (sorted elements)\n"
    "  verify-onb: probe,stage,size,completeness_sum\n"
    "  mu-hat:     t0..t{d-1},re,im,abs,exact_zero\n"
    "  attractor:  x0..x{d-1}  (one row per sample)\n"
    "  harmonic:   probe,cycle,mc,mc_std_error,closed_form,unresolved\n"
    "  riesz:      bin_lo,bin_hi,count,density  (histogram of t in [0, 2pi))\n"
    "Exit codes: 0 ok, 1 check failed, 2 invalid input.";

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Harmonic analysis of affine iterated function systems", "fracspec"};
  app.footer(kCsvHelp);
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub, bool system) {
    if (system) {
      auto* ex = sub->add_option("--example", common.example, "Registry entry name");
      auto* cf = sub->add_option("--config", common.config_path, "System config file");
      ex->excludes(cf);
    }
    sub->add_option("--seed", common.seed, "RNG seed (overrides the config)");
    sub->add_option("--p-max", common.p_max, "Longest cycle period searched");
    sub->add_option("--levels", common.levels, "Spectrum generation levels");
    sub->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", common.out_path, "CSV output path");
  };

  std::function<Result()> action;
  auto with_config = [&](auto fn) { return [&, fn] { return fn(resolve(common)); }; };

  auto* hada = app.add_subcommand("check-hadamard", "Verify Hadamard duality of (B, L, R)");
  add_common(hada, true);
  hada->callback([&] { action = with_config([&](const SystemConfig& c) { return cmd_check_hadamard(c, common); }); });

  bool all_cycles = false;
  auto* cyc = app.add_subcommand("cycles", "Enumerate cycles of IFS(L) and classify W-cycles");
  add_common(cyc, true);
  cyc->add_flag("--all", all_cycles, "List every cycle, not only W-cycles");
  cyc->callback([&] {
    action = with_config([&](const SystemConfig& c) { return cmd_cycles(c, common, all_cycles); });
  });

  std::size_t limit = 1000;
  std::string box;
  auto* spec = app.add_subcommand("spectrum", "Generate the candidate spectrum from the W-cycles");
  add_common(spec, true);
  spec->add_option("--limit", limit, "Elements listed in the JSON report");
  spec->add_option("--box", box, "Only elements with all coordinates in [-BOX, BOX]");
  spec->callback([&] {
    action = with_config([&](const SystemConfig& c) { return cmd_spectrum(c, common, limit, box); });
  });

  std::size_t count = 50;
  std::vector<std::string> xs;
  long grid_radius = 100, grid_den = 4, onb_lattice_radius = 20;
  auto* onb = app.add_subcommand("verify-onb", "Orthogonality and completeness of the exponentials");
  add_common(onb, true);
  onb->add_option("--count", count, "Spectrum elements in the Gram check");
  onb->add_option("--x", xs, "Probe point(s), comma-separated coordinates");
  onb->add_option("--grid-radius", grid_radius, "Non-dual systems: |k| bound of the grid k/den");
  onb->add_option("--grid-den", grid_den, "Non-dual systems: grid denominator");
  onb->add_option("--lattice-radius", onb_lattice_radius, "Window radius for the lattice Parseval sum");
  onb->callback([&] {
    action = with_config([&](const SystemConfig& c) {
      return cmd_verify_onb(c, common, count, xs, grid_radius, grid_den, onb_lattice_radius);
    });
  });

  std::vector<std::string> ts;
  auto* mu = app.add_subcommand("mu-hat", "Evaluate the Fourier transform of mu_B");
  add_common(mu, true);
  mu->add_option("--t", ts, "Frequency point(s), comma-separated coordinates");
  mu->callback([&] { action = with_config([&](const SystemConfig& c) { return cmd_mu_hat(c, common, ts); }); });

  std::size_t samples = 10000;
  std::string which = "B";
  double cell = 0.0;
  auto* att = app.add_subcommand("attractor", "Chaos-game samples of the invariant measure");
  add_common(att, true);
  att->add_option("--samples", samples, "Number of samples");
  att->add_option("--view", which, "B or L");
  att->add_option("--cell", cell, "Occupancy grid cell size (default radius/100)");
  att->callback([&] {
    action = with_config([&](const SystemConfig& c) { return cmd_attractor(c, common, samples, which, cell); });
  });

  HarmonicOptions hopt;
  auto* harm = app.add_subcommand("harmonic", "Estimate the cycle harmonic functions h_C");
  add_common(harm, true);
  harm->add_option("--x", hopt.xs, "Probe point(s), comma-separated coordinates");
  harm->add_option("--paths", hopt.paths, "Monte Carlo paths per probe");
  harm->add_option("--length", hopt.length, "Steps per path");
  harm->add_option("--depth", hopt.depth, "Closed form: blocks per word (0 = 16/period)");
  harm->add_option("--prune", hopt.prune, "Closed form: cylinder weight below which subtrees are cut");
  harm->add_option("--cesaro", hopt.cesaro, "Also run this many Cesaro iterations on a grid");
  harm->add_option("--resolution", hopt.resolution, "Grid points per axis for --cesaro");
  harm->add_option("--lattice-radius", hopt.lattice_radius, "Window radius for the lattice Parseval sum");
  harm->callback([&] { action = with_config([&](const SystemConfig& c) { return cmd_harmonic(c, common, hopt); }); });

  RieszOptions ropt;
  auto* rz = app.add_subcommand("riesz", "Markov chain for the Riesz-product invariant measure");
  add_common(rz, false);
  rz->add_option("--steps", ropt.steps, "Chain steps after burn-in (all chains)");
  rz->add_option("--burn-in", ropt.burn_in, "Burn-in per chain");
  rz->add_option("--chains", ropt.chains, "Independent chains");
  rz->add_option("--K", ropt.K, "Partial-product order for predicted coefficients");
  rz->add_option("--bins", ropt.bins, "Histogram bins");
  rz->callback([&] {
    action = [&] {
      SystemConfig c = example_config("riesz3");
      if (common.seed) c.seed = *common.seed;
      return cmd_riesz(c, common, ropt);
    };
  });

  std::string example_name;
  auto* ex = app.add_subcommand("example", "List registry entries, or show one and run its golden checks");
  ex->add_option("name", example_name, "Registry entry");
  ex->add_option("--threads", common.threads, "Worker threads")->check(CLI::Range(1u, 1024u));
  ex->callback([&] { action = [&] { return cmd_example(example_name, common); }; });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  }

  try {
    Result r = action();
    if (!common.out_path.empty() && r.csv) write_csv(common.out_path, *r.csv);
    out << r.report.dump(2) << "\n";
    return r.code;
  } catch (const CheckFailure& e) {
    json j{{"error", e.what()}};
    out << j.dump(2) << "\n";
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const KernelError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
}

}  // namespace fracspec::app
