#include "symest/polish_mcmc.hpp"

#include <cmath>
#include <ostream>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/format.hpp"
#include "symest/samplers.hpp"

namespace symest {

void PolishConfig::validate() const {
  if (!(sigma > 0.0)) throw ConfigError("polish sigma must be positive");
  if (!(epsilon > 0.0)) throw ConfigError("polish epsilon must be positive");
  if (truncation.is_empty()) throw ConfigError("polish truncation interval is empty");
  if (trace_stride == 0) throw ConfigError("polish trace_stride must be positive");
  if (burn_in && sweeps > 0 && *burn_in >= sweeps) {
    throw ConfigError("polish burn_in must be below sweeps");
  }
}

ThetaConditional theta_conditional_params(std::span<const double> y, double sigma) {
  if (y.size() < 2) throw DomainError("theta conditional needs at least one transition");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 1; j < y.size(); ++j) {
    const double b = MapModel::beta(y[j - 1]);
    num += (y[j] - MapModel::alpha(y[j - 1])) * b;
    den += b * b;
  }
  if (!(den > 0.0)) throw DegenerateConditionalError("all beta(y) vanish; theta is unidentified");
  return {num / den, sigma * sigma / den};
}

void polish_sweep(PolishState& state, const PolishConfig& config, const RefinedCells& cells) {
  auto& y = state.y;
  auto& rng = state.rng;
  const std::size_t n = y.size() - 1;
  const double lambda = config.lambda();

  const ThetaConditional cond = theta_conditional_params(y, config.sigma);
  state.theta = sample_truncated_normal(rng, cond.mean, cond.variance, config.truncation);
  const double theta = state.theta;

  y[0] = slice_update_site(rng, theta, lambda, y[0], std::nullopt, y[1], cells[0]);
  for (std::size_t i = 1; i < n; ++i) {
    y[i] = slice_update_site(rng, theta, lambda, y[i], y[i - 1], y[i + 1], cells[i]);
  }
  y[n] = truncated_normal_update_last(rng, theta, lambda, y[n], y[n - 1], cells[n]);
  ++state.sweep;
}

std::vector<std::size_t> infeasible_sites(std::span<const double> y, const RefinedCells& cells) {
  std::vector<std::size_t> bad;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i >= cells.size() || !cells[i].contains(y[i])) bad.push_back(i);
  }
  return bad;
}

PolishEstimate run_polish(double theta_init, const CandidateVector& candidate_init,
                          const RefinedCells& cells, const PolishConfig& config, RngStream rng) {
  config.validate();
  if (candidate_init.size() < 2) throw DomainError("polishing needs at least two sites");
  if (candidate_init.size() != cells.size()) {
    throw DomainError("candidate and refined cells differ in length");
  }
  if (!config.truncation.contains(theta_init)) {
    throw FeasibilityError("initial theta outside the truncation interval", {});
  }
  if (auto bad = infeasible_sites(candidate_init.view(), cells); !bad.empty()) {
    std::string msg = "initial candidate outside refined cells at indices";
    for (std::size_t i : bad) msg += " " + std::to_string(i);
    throw FeasibilityError(msg, std::move(bad));
  }

  PolishEstimate out;
  out.final_state = {theta_init, candidate_init.values, rng, 0};
  PolishState& state = out.final_state;
  const double y0_init = candidate_init[0];
  const std::size_t burn_in = config.effective_burn_in();

  // Sums of deviations from the starting point keep the means accurate well
  // below 1e-8.
  double theta_dev = 0.0;
  double y0_dev = 0.0;
  for (std::size_t j = 1; j <= config.sweeps; ++j) {
    polish_sweep(state, config, cells);
    if (j <= burn_in) continue;
    theta_dev += state.theta - theta_init;
    y0_dev += state.y[0] - y0_init;
    ++out.samples;
    if (j % config.trace_stride == 0 || j == config.sweeps) {
      const double k = static_cast<double>(out.samples);
      out.trace.push_back({j, theta_init + theta_dev / k, y0_init + y0_dev / k});
    }
  }
  if (out.samples == 0) {
    out.theta_hat = theta_init;
    out.y0_hat = y0_init;
  } else {
    const double k = static_cast<double>(out.samples);
    out.theta_hat = theta_init + theta_dev / k;
    out.y0_hat = y0_init + y0_dev / k;
  }
  return out;
}

void write_polish_trace_csv(std::ostream& os, const std::vector<PolishTracePoint>& trace) {
  os << "sweep,theta_mean,y0_mean\n";
  for (const auto& p : trace) {
    os << p.sweep << ',' << format_real(p.theta_mean) << ',' << format_real(p.y0_mean) << '\n';
  }
}

}  // namespace symest
