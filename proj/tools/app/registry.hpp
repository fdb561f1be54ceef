#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <fracspec/ifs.hpp>
#include <fracspec/rational.hpp>

#include "config.hpp"

namespace fracspec::app {

/// Frozen expectations for a registry entry.
struct Golden {
  bool hadamard = true;
  /// Canonical words of W-cycles found at cycles_p_max.
  unsigned cycles_p_max = 4;
  std::vector<Word> w_cycles;
  /// w_cycles is the complete list, not a subset.
  bool cycles_exact = true;
  /// d = 1: smallest nonnegative spectrum elements at spectrum_levels.
  unsigned spectrum_levels = 8;
  std::vector<Rational> spectrum_prefix;
  /// Maximum orthogonal clique on the k/4 grid (non-dual systems).
  std::optional<std::size_t> max_clique;
};

struct ExampleEntry {
  std::string name;
  std::string summary;
  std::string config_text;
  Golden golden;
};

const std::vector<ExampleEntry>& registry();

/// Throws ConfigError for unknown names.
const ExampleEntry& find_example(std::string_view name);
SystemConfig example_config(std::string_view name);

}  // namespace fracspec::app
