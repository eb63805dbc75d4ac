#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "symest/grid_search.hpp"
#include "symest/polish_mcmc.hpp"
#include "symest/strength_mcmc.hpp"

namespace symest {

/// Everything an end-to-end run needs. Defaults reproduce the reference
/// experiment: theta = -1.71, y0 = 0.8, n = 1000 observations of which the
/// first 600 drive the grid search.
struct RunConfig {
  double true_theta = -1.71;
  double true_y0 = 0.8;
  std::size_t n = 1000;
  std::size_t m = 600;
  GridSpec grid{-1.5, -0.045, 12};
  std::size_t levels = 3;
  GibbsConfig gibbs;
  /// `truncation` is not configurable here; it comes from the estimate stage.
  PolishConfig polish;
  /// Number of observations used by the polishing chain; 0 means kappa.
  std::size_t polish_sites = 0;
  std::size_t anchor_threshold = 20;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  std::string output_dir = "symest_out";

  /// Throws ConfigError.
  void validate() const;

  friend bool operator==(const RunConfig&, const RunConfig&);
};

/// Assign one `key = value` setting; throws ConfigError for unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Parse flat `key = value` lines on top of the defaults. Blank lines and
/// lines starting with '#' are ignored.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::string& path);

/// Every key, one per line, in a fixed order; parse_config reads it back exactly.
std::string serialize_config(const RunConfig& config);

}  // namespace symest
