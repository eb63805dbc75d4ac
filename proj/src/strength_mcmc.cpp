#include "symest/strength_mcmc.hpp"

#include <cmath>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/samplers.hpp"
#include "symest/strength.hpp"

namespace symest {

void GibbsConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("gibbs sigma must be positive");
  if (total_sweeps == 0) throw ConfigError("gibbs total_sweeps must be positive");
  if (burn_in >= total_sweeps) throw ConfigError("gibbs burn_in must be below total_sweeps");
  if (ces_stride == 0) throw ConfigError("gibbs ces_stride must be positive");
}

CandidateVector ChainState::running_mean() const {
  if (sweep == 0) {
    CandidateVector current{y};
    current[0] = std::abs(current[0]);
    return current;
  }
  CandidateVector mean{std::vector<double>(running_sum.size())};
  const double scale = static_cast<double>(sweep);
  for (std::size_t i = 0; i < running_sum.size(); ++i) mean[i] = running_sum[i] / scale;
  return mean;
}

ChainState init_chain(const SymbolicData& data, RngStream rng) {
  if (data.size() == 0) throw DomainError("cannot start a chain on empty data");
  ChainState state;
  state.y.resize(data.size() + 1);
  for (std::size_t i = 0; i <= data.size(); ++i) state.y[i] = sample_uniform(rng, data.cell(i));
  state.running_sum.assign(state.y.size(), 0.0);
  state.rng = rng;
  return state;
}

bool chain_state_valid(const ChainState& state, const SymbolicData& data) {
  if (state.y.size() != data.size() + 1) return false;
  for (std::size_t i = 0; i < state.y.size(); ++i) {
    if (!data.cell(i).contains(state.y[i])) return false;
  }
  return true;
}

void gibbs_sweep(ChainState& state, double theta, const GibbsConfig& config, const SymbolicData& data) {
  const std::size_t n = data.size();
  const double lambda = config.lambda();
  auto& y = state.y;
  auto& rng = state.rng;

  y[0] = slice_update_site(rng, theta, lambda, y[0], std::nullopt, y[1], data.cell(0));
  for (std::size_t i = 1; i < n; ++i) {
    y[i] = slice_update_site(rng, theta, lambda, y[i], y[i - 1], y[i + 1], data.cell(i));
  }
  y[n] = truncated_normal_update_last(rng, theta, lambda, y[n], y[n - 1], data.cell(n));

  ++state.sweep;
  // The likelihood is even in y_0, so only |y_0| is identifiable; the
  // running mean reports the nonnegative branch.
  state.running_sum[0] += std::abs(y[0]);
  for (std::size_t i = 1; i <= n; ++i) state.running_sum[i] += y[i];
}

StrengthChainResult run_strength_chain(double theta, const SymbolicData& data,
                                       const GibbsConfig& config, RngStream rng) {
  config.validate();
  if (!MapModel::theta_space().contains(theta)) throw DomainError("theta outside [-2, 0)");
  ChainState state = init_chain(data, rng);
  StrengthChainResult result;
  bool recorded = false;
  for (std::size_t j = 1; j <= config.total_sweeps; ++j) {
    gibbs_sweep(state, theta, config, data);
    if (j <= config.burn_in || j % config.ces_stride != 0) continue;
    CandidateVector mean = state.running_mean();
    const std::size_t ces = cumulative_strength(theta, mean, data).ces;
    if (config.record_trace) result.trace.push_back({j, ces, mean[0]});
    if (!recorded || ces > result.best_ces) {
      recorded = true;
      result.best_ces = ces;
      result.best_sweep = j;
      result.best_y0 = mean[0];
      result.best_candidate = std::move(mean);
    }
  }
  if (!recorded) {
    result.best_candidate = state.running_mean();
    result.best_ces = cumulative_strength(theta, result.best_candidate, data).ces;
    result.best_y0 = result.best_candidate[0];
    result.best_sweep = state.sweep;
  }
  return result;
}

}  // namespace symest
