#include "config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace fracspec::app {
namespace {

struct Value {
  bool is_list = false;
  std::string atom;
  std::vector<Value> items;
};

class Parser {
 public:
  explicit Parser(std::string_view text) {
    // Drop comments first so '#' never reaches the tokenizer.
    std::string clean;
    bool comment = false;
    for (char c : text) {
      if (c == '#') comment = true;
      if (c == '\n') comment = false;
      if (!comment) clean += c;
    }
    tokenize(clean);
  }

  std::map<std::string, Value> entries() {
    std::map<std::string, Value> out;
    while (pos_ < toks_.size()) {
      const Tok key = toks_[pos_++];
      if (!valid_key(key.text)) fail(key, "expected a key, got '" + key.text + "'");
      if (pos_ >= toks_.size() || toks_[pos_].text != "=") fail(key, "expected '=' after key '" + key.text + "'");
      ++pos_;
      Value v = value(key.text);
      if (out.count(key.text)) fail(key, key.text + ": duplicate key");
      out.emplace(key.text, std::move(v));
    }
    return out;
  }

 private:
  struct Tok {
    std::string text;
    int line;
  };

  static bool valid_key(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s) {
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    }
    return true;
  }

  [[noreturn]] static void fail(const Tok& t, const std::string& msg) {
    throw ConfigError("line " + std::to_string(t.line) + ": " + msg);
  }

  void tokenize(const std::string& s) {
    int line = 1;
    std::size_t i = 0;
    while (i < s.size()) {
      const char c = s[i];
      if (c == '\n') ++line;
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '[' || c == ']' || c == ',' || c == '=') {
        toks_.push_back({std::string(1, c), line});
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != '[' && s[j] != ']' &&
             s[j] != ',' && s[j] != '=')
        ++j;
      toks_.push_back({s.substr(i, j - i), line});
      i = j;
    }
  }

  Value value(const std::string& key) {
    if (pos_ >= toks_.size()) throw ConfigError(key + ": missing value");
    const Tok t = toks_[pos_++];
    if (t.text == "[") {
      Value list;
      list.is_list = true;
      while (true) {
        if (pos_ >= toks_.size()) fail(t, key + ": unterminated list");
        if (toks_[pos_].text == "]") {
          ++pos_;
          break;
        }
        list.items.push_back(value(key));
        if (pos_ >= toks_.size()) fail(t, key + ": unterminated list");
        if (toks_[pos_].text == ",") {
          ++pos_;
        } else if (toks_[pos_].text != "]") {
          fail(toks_[pos_], key + ": expected ',' or ']', got '" + toks_[pos_].text + "'");
        }
      }
      return list;
    }
    if (t.text == "]" || t.text == "," || t.text == "=") fail(t, key + ": unexpected '" + t.text + "'");
    Value v;
    v.atom = t.text;
    return v;
  }

  std::vector<Tok> toks_;
  std::size_t pos_ = 0;
};

Rational number(const std::string& field, const Value& v) {
  if (v.is_list) throw ConfigError(field + ": expected a number, got a list");
  try {
    return parse_rational(v.atom);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

double positive_real(const std::string& field, const Value& v) {
  const double x = to_double(number(field, v));
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(field + ": must be a positive number");
  return x;
}

std::uint64_t nonnegative_integer(const std::string& field, const Value& v) {
  const Rational r = number(field, v);
  if (!is_integer(r) || r < 0) throw ConfigError(field + ": must be a nonnegative integer");
  if (r > Rational(BigInt(std::numeric_limits<std::uint64_t>::max()))) throw ConfigError(field + ": too large");
  return numerator(r).convert_to<std::uint64_t>();
}

std::vector<Rational> flat_numbers(const std::string& field, const Value& v) {
  std::vector<Rational> out;
  if (!v.is_list) {
    out.push_back(number(field, v));
    return out;
  }
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    const Value& item = v.items[i];
    if (item.is_list) {
      for (std::size_t j = 0; j < item.items.size(); ++j) {
        out.push_back(number(field + "[" + std::to_string(i) + "][" + std::to_string(j) + "]", item.items[j]));
      }
    } else {
      out.push_back(number(field + "[" + std::to_string(i) + "]", item));
    }
  }
  return out;
}

std::vector<RatVec> vectors(const std::string& field, const Value& v, std::size_t d) {
  if (!v.is_list) throw ConfigError(field + ": expected a list of vectors");
  std::vector<RatVec> out;
  for (std::size_t i = 0; i < v.items.size(); ++i) {
    const std::string name = field + "[" + std::to_string(i) + "]";
    const Value& item = v.items[i];
    if (!item.is_list) {
      if (d != 1) throw ConfigError(name + ": expected a vector with " + std::to_string(d) + " coordinates");
      out.push_back(RatVec{number(name, item)});
      continue;
    }
    if (item.items.size() != d) {
      throw ConfigError(name + ": expected " + std::to_string(d) + " coordinates, got " +
                        std::to_string(item.items.size()));
    }
    RatVec x(d);
    for (std::size_t j = 0; j < d; ++j) x[j] = number(name, item.items[j]);
    out.push_back(std::move(x));
  }
  return out;
}

std::string vec_text(const RatVec& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

std::string vecs_text(const std::vector<RatVec>& vs) {
  std::string s = "[";
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) s += ", ";
    s += vec_text(vs[i]);
  }
  return s + "]";
}

std::string real_text(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

AffineSystem SystemConfig::system() const {
  try {
    return AffineSystem(R, B, L, unitarity_tol);
  } catch (const AmbiguousSpectrumError& e) {
    throw ConfigError(std::string("R: ") + e.what());
  } catch (const SingularMatrixError& e) {
    throw ConfigError(std::string("R: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

SystemConfig parse_config(std::string_view text, std::string name) {
  auto entries = Parser(text).entries();
  static const char* known[] = {"name",    "d",      "R",             "B",      "L",      "unitarity_tol",
                                "tail_tol", "cycle_tol", "p_max",     "lambda_levels", "seed", "weight",
                                "probes",  "lattice"};
  for (const auto& [key, v] : entries) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError(key + ": unknown key");
  }
  SystemConfig c;
  c.name = std::move(name);
  if (auto it = entries.find("name"); it != entries.end()) {
    if (it->second.is_list) throw ConfigError("name: expected a single word");
    c.name = it->second.atom;
  }
  for (const char* required : {"R", "B", "L"}) {
    if (!entries.count(required)) throw ConfigError(std::string(required) + ": missing");
  }

  const Value& rv = entries.at("R");
  const std::vector<Rational> r = flat_numbers("R", rv);
  std::size_t d = 0;
  if (auto it = entries.find("d"); it != entries.end()) {
    d = nonnegative_integer("d", it->second);
    if (d == 0) throw ConfigError("d: must be >= 1");
  } else {
    d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(r.size()))));
  }
  if (d == 0 || r.size() != d * d) {
    throw ConfigError("R: expected " + std::to_string(d * d) + " entries for d=" + std::to_string(d) + ", got " +
                      std::to_string(r.size()));
  }
  if (rv.is_list && !rv.items.empty() && rv.items.front().is_list) {
    if (rv.items.size() != d) throw ConfigError("R: expected " + std::to_string(d) + " rows");
    for (const auto& row : rv.items) {
      if (!row.is_list || row.items.size() != d) throw ConfigError("R: rows must have " + std::to_string(d) + " entries");
    }
  }
  c.d = d;
  c.R = RatMat(d, r);
  c.B = vectors("B", entries.at("B"), d);
  c.L = vectors("L", entries.at("L"), d);

  if (auto it = entries.find("unitarity_tol"); it != entries.end()) c.unitarity_tol = positive_real("unitarity_tol", it->second);
  if (auto it = entries.find("tail_tol"); it != entries.end()) c.tail_tol = positive_real("tail_tol", it->second);
  if (auto it = entries.find("cycle_tol"); it != entries.end()) c.cycle_tol = positive_real("cycle_tol", it->second);
  if (auto it = entries.find("p_max"); it != entries.end()) {
    c.p_max = static_cast<unsigned>(nonnegative_integer("p_max", it->second));
    if (c.p_max == 0 || c.p_max > 32) throw ConfigError("p_max: must be in [1, 32]");
  }
  if (auto it = entries.find("lambda_levels"); it != entries.end()) {
    c.lambda_levels = static_cast<unsigned>(nonnegative_integer("lambda_levels", it->second));
  }
  if (auto it = entries.find("seed"); it != entries.end()) c.seed = nonnegative_integer("seed", it->second);
  if (auto it = entries.find("weight"); it != entries.end()) {
    const std::string w = it->second.is_list ? "" : it->second.atom;
    if (w == "digits") {
      c.weight = WeightKind::digits;
    } else if (w == "riesz") {
      c.weight = WeightKind::riesz;
    } else {
      throw ConfigError("weight: expected 'digits' or 'riesz'");
    }
  }
  if (auto it = entries.find("probes"); it != entries.end()) c.probes = vectors("probes", it->second, d);
  if (auto it = entries.find("lattice"); it != entries.end()) {
    const auto dens = flat_numbers("lattice", it->second);
    if (dens.size() != d) throw ConfigError("lattice: expected " + std::to_string(d) + " denominators");
    Lattice lat;
    for (const auto& q : dens) {
      if (!is_integer(q) || q <= 0) throw ConfigError("lattice: denominators must be positive integers");
      lat.denominators.push_back(numerator(q));
    }
    c.lattice = std::move(lat);
  }
  return c;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.find_last_of('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_config(ss.str(), name);
}

std::string format_config(const SystemConfig& c) {
  std::ostringstream os;
  os << "name = " << c.name << "\n";
  os << "d = " << c.d << "\n";
  os << "R = [";
  for (std::size_t i = 0; i < c.d; ++i) {
    if (i) os << ", ";
    os << "[";
    for (std::size_t j = 0; j < c.d; ++j) os << (j ? ", " : "") << to_string(c.R(i, j));
    os << "]";
  }
  os << "]\n";
  os << "B = " << vecs_text(c.B) << "\n";
  os << "L = " << vecs_text(c.L) << "\n";
  os << "unitarity_tol = " << real_text(c.unitarity_tol) << "\n";
  os << "tail_tol = " << real_text(c.tail_tol) << "\n";
  os << "cycle_tol = " << real_text(c.cycle_tol) << "\n";
  os << "p_max = " << c.p_max << "\n";
  os << "lambda_levels = " << c.lambda_levels << "\n";
  os << "seed = " << c.seed << "\n";
  os << "weight = " << (c.weight == WeightKind::riesz ? "riesz" : "digits") << "\n";
  if (!c.probes.empty()) os << "probes = " << vecs_text(c.probes) << "\n";
  if (c.lattice) {
    os << "lattice = [";
    for (std::size_t i = 0; i < c.lattice->denominators.size(); ++i) {
      os << (i ? ", " : "") << c.lattice->denominators[i];
    }
    os << "]\n";
  }
  return os.str();
}

}  // namespace fracspec::app
