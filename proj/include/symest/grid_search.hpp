#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/interval.hpp"
#include "symest/rng.hpp"
#include "symest/strength_mcmc.hpp"
#include "symest/symbolic.hpp"

namespace symest {

/// Theta grid {start + step * s : 0 <= s < points}.
struct GridSpec {
  double start = -1.5;
  double step = -0.045;
  std::size_t points = 12;

  double at(std::size_t s) const { return start + step * static_cast<double>(s); }
  /// Throws ConfigError unless points >= 3, step != 0 and every point is in [-2, 0).
  void validate() const;
};

struct GridPointResult {
  double theta = 0.0;
  std::size_t best_ces = 0;
  double best_y0 = 0.0;
  CandidateVector candidate;
};

struct GridLevel {
  std::size_t level = 0;
  GridSpec grid;
  std::vector<GridPointResult> points;
  std::size_t argmax = 0;
};

struct ZoomResult {
  double theta_star = 0.0;
  double y0 = 0.0;
  std::size_t ces = 0;
  /// Open interval between the two grid neighbours of theta_star.
  Interval truncation;
  CandidateVector candidate;
  std::vector<GridLevel> levels;
};

/// One strength chain per grid point. Point s of level `level` draws from
/// `rng.split(grid_stream_id(level, s))`. `workers` threads share the
/// points; results do not depend on the worker count.
std::vector<GridPointResult> evaluate_grid(const GridSpec& grid, const SymbolicData& data,
                                           const GibbsConfig& config, const RngStream& rng,
                                           std::size_t level = 1, std::size_t workers = 1);

/// Index of the largest CES (first one on ties).
std::size_t grid_argmax(const std::vector<GridPointResult>& results);

/// Next grid from the neighbour at argmax - 1 to the neighbour at argmax + 1,
/// with the same point count. Throws EdgeOfGridError for an edge maximizer.
GridSpec zoom(const GridSpec& grid, std::size_t argmax_index);

/// `levels` rounds of evaluate_grid + zoom; the truncation interval comes
/// from the last level's maximizer.
ZoomResult run_zooming(const GridSpec& initial, std::size_t levels, const SymbolicData& data,
                       const GibbsConfig& config, const RngStream& rng, std::size_t workers = 1);

/// CSV "theta,ces".
void write_grid_level_csv(std::ostream& os, const GridLevel& level);

}  // namespace symest
