#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <fracspec/affine_system.hpp>
#include <fracspec/linalg.hpp>
#include <fracspec/spectrum.hpp>

namespace fracspec::app {

/// Invalid configuration input; the message names the offending field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class WeightKind { digits, riesz };

struct SystemConfig {
  std::string name;
  std::size_t d = 0;
  RatMat R;
  std::vector<RatVec> B;
  std::vector<RatVec> L;
  double unitarity_tol = 1e-12;
  double tail_tol = 1e-10;
  double cycle_tol = 1e-9;
  unsigned p_max = 8;
  unsigned lambda_levels = 8;
  std::uint64_t seed = 0;
  WeightKind weight = WeightKind::digits;
  /// Default probe points for verify-onb and harmonic.
  std::vector<RatVec> probes;
  /// Lattice for cycle basins and lattice completeness sums.
  std::optional<Lattice> lattice;

  /// Builds the AffineSystem; construction errors become ConfigError.
  AffineSystem system() const;
};

/// Parses the key = value format documented in docs/config.md.
SystemConfig parse_config(std::string_view text, std::string name = "config");
SystemConfig load_config(const std::string& path);

/// Canonical text form (parse_config(format_config(c)) reproduces c).
std::string format_config(const SystemConfig& c);

}  // namespace fracspec::app
