#pragma once

#include <cstddef>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/rng.hpp"
#include "symest/symbolic.hpp"

namespace symest {

struct GibbsConfig {
  double sigma = 1e-3;
  std::size_t burn_in = 40'000;
  std::size_t total_sweeps = 200'000;
  /// CES is evaluated on post-burn-in sweeps j with j % ces_stride == 0.
  std::size_t ces_stride = 1;
  /// Record (sweep, ces, running y0) at every CES evaluation.
  bool record_trace = false;

  double lambda() const { return 1.0 / (2.0 * sigma * sigma); }
  /// Throws ConfigError.
  void validate() const;
};

/// State of a fixed-theta chain over y_0..y_n.
struct ChainState {
  std::vector<double> y;
  std::size_t sweep = 0;
  /// Sum of y over sweeps 1..sweep, with |y_0| in place of y_0.
  std::vector<double> running_sum;
  RngStream rng;

  /// Running average (1 / sweep) * running_sum; the current state (folded
  /// y_0) if sweep == 0.
  CandidateVector running_mean() const;
};

/// y_0 uniform on X, y_i uniform on D_i.
ChainState init_chain(const SymbolicData& data, RngStream rng);

/// True when y_0 lies in X and every y_i in D_i.
bool chain_state_valid(const ChainState& state, const SymbolicData& data);

/// One systematic-scan pass over y_0, y_1, ..., y_n at fixed theta; adds the
/// new state to the running sum.
void gibbs_sweep(ChainState& state, double theta, const GibbsConfig& config, const SymbolicData& data);

struct StrengthTracePoint {
  std::size_t sweep = 0;
  std::size_t ces = 0;
  double y0_running = 0.0;
};

struct StrengthChainResult {
  std::size_t best_ces = 0;
  /// Sweep at which the best CES was first reached (0 if none recorded).
  std::size_t best_sweep = 0;
  CandidateVector best_candidate;
  double best_y0 = 0.0;
  std::vector<StrengthTracePoint> trace;
};

/// Runs `total_sweeps` sweeps and returns the running-average candidate with
/// the largest CES over the recorded post-burn-in sweeps.
StrengthChainResult run_strength_chain(double theta, const SymbolicData& data,
                                       const GibbsConfig& config, RngStream rng);

}  // namespace symest
