#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/interval.hpp"
#include "symest/rng.hpp"
#include "symest/symbolic.hpp"

namespace symest {

struct PolishConfig {
  double sigma = 1e-8;
  double epsilon = 5e-5;
  std::size_t sweeps = 100'000;
  /// Defaults to sweeps / 10.
  std::optional<std::size_t> burn_in;
  /// Support of theta (the bracketing interval from zooming).
  Interval truncation;
  std::size_t trace_stride = 100;

  double lambda() const { return 1.0 / (2.0 * sigma * sigma); }
  std::size_t effective_burn_in() const { return burn_in.value_or(sweeps / 10); }
  void validate() const;
};

/// Mean and variance of the normal full conditional of theta (before
/// truncation) given an orbit state y_0..y_n.
struct ThetaConditional {
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = sum (y_j - alpha(y_{j-1})) beta(y_{j-1}) / sum beta(y_{j-1})^2,
/// variance = sigma^2 / sum beta(y_{j-1})^2.
/// Throws DegenerateConditionalError if every beta(y_{j-1}) is zero.
ThetaConditional theta_conditional_params(std::span<const double> y, double sigma);

struct PolishState {
  double theta = 0.0;
  std::vector<double> y;
  RngStream rng;
  std::size_t sweep = 0;
};

/// Theta from its truncated-normal conditional, then y_0..y_n by
/// auxiliary-variable updates restricted to the refined cells.
void polish_sweep(PolishState& state, const PolishConfig& config, const RefinedCells& cells);

/// Indices i with y[i] outside cells[i]; theta is checked separately.
std::vector<std::size_t> infeasible_sites(std::span<const double> y, const RefinedCells& cells);

struct PolishTracePoint {
  std::size_t sweep = 0;
  double theta_mean = 0.0;
  double y0_mean = 0.0;
};

struct PolishEstimate {
  double theta_hat = 0.0;
  double y0_hat = 0.0;
  std::size_t samples = 0;
  std::vector<PolishTracePoint> trace;
  PolishState final_state;
};

/// Ergodic means of theta and y_0 over post-burn-in sweeps. With no
/// post-burn-in sweeps the estimate is the initial point.
/// Throws FeasibilityError listing the sites outside their cells.
PolishEstimate run_polish(double theta_init, const CandidateVector& candidate_init,
                          const RefinedCells& cells, const PolishConfig& config, RngStream rng);

/// CSV "sweep,theta_mean,y0_mean".
void write_polish_trace_csv(std::ostream& os, const std::vector<PolishTracePoint>& trace);

}  // namespace symest
