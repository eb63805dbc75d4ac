#include "symest/grid_search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/format.hpp"

namespace symest {

void GridSpec::validate() const {
  if (points < 3) throw ConfigError("grid needs at least 3 points");
  if (!(step != 0.0) || !std::isfinite(step)) throw ConfigError("grid step must be nonzero");
  for (std::size_t s = 0; s < points; ++s) {
    if (!MapModel::theta_space().contains(at(s))) {
      throw ConfigError("grid point " + std::to_string(s) + " outside [-2, 0)");
    }
  }
}

std::vector<GridPointResult> evaluate_grid(const GridSpec& grid, const SymbolicData& data,
                                           const GibbsConfig& config, const RngStream& rng,
                                           std::size_t level, std::size_t workers) {
  grid.validate();
  config.validate();
  std::vector<GridPointResult> results(grid.points);
  auto run_point = [&](std::size_t s) {
    const double theta = grid.at(s);
    StrengthChainResult chain =
        run_strength_chain(theta, data, config, rng.split(grid_stream_id(level, s)));
    results[s] = {theta, chain.best_ces, chain.best_y0, std::move(chain.best_candidate)};
  };

  workers = std::clamp<std::size_t>(workers, 1, grid.points);
  if (workers == 1) {
    for (std::size_t s = 0; s < grid.points; ++s) run_point(s);
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t s = next++; s < grid.points; s = next++) {
        try {
          run_point(s);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::size_t grid_argmax(const std::vector<GridPointResult>& results) {
  if (results.empty()) throw DomainError("empty grid result");
  std::size_t best = 0;
  for (std::size_t s = 1; s < results.size(); ++s) {
    if (results[s].best_ces > results[best].best_ces) best = s;
  }
  return best;
}

GridSpec zoom(const GridSpec& grid, std::size_t argmax_index) {
  if (argmax_index == 0 || argmax_index + 1 >= grid.points) {
    throw EdgeOfGridError("grid maximizer at index " + std::to_string(argmax_index) +
                              " is on the grid edge; restart with a shifted or wider grid",
                          argmax_index);
  }
  const double from = grid.at(argmax_index - 1);
  const double to = grid.at(argmax_index + 1);
  return {from, (to - from) / static_cast<double>(grid.points - 1), grid.points};
}

ZoomResult run_zooming(const GridSpec& initial, std::size_t levels, const SymbolicData& data,
                       const GibbsConfig& config, const RngStream& rng, std::size_t workers) {
  if (levels == 0) throw ConfigError("zooming needs at least one level");
  ZoomResult out;
  GridSpec grid = initial;
  for (std::size_t level = 1; level <= levels; ++level) {
    GridLevel table{level, grid, evaluate_grid(grid, data, config, rng, level, workers), 0};
    table.argmax = grid_argmax(table.points);
    out.levels.push_back(std::move(table));
    if (level < levels) grid = zoom(grid, out.levels.back().argmax);
  }

  const GridLevel& last = out.levels.back();
  const std::size_t k = last.argmax;
  if (k == 0 || k + 1 >= last.grid.points) {
    throw EdgeOfGridError("final maximizer on the grid edge; no bracketing interval", k);
  }
  const double a = last.grid.at(k - 1);
  const double b = last.grid.at(k + 1);
  out.theta_star = last.points[k].theta;
  out.y0 = last.points[k].best_y0;
  out.ces = last.points[k].best_ces;
  out.candidate = last.points[k].candidate;
  out.truncation = Interval::open(std::min(a, b), std::max(a, b));
  return out;
}

void write_grid_level_csv(std::ostream& os, const GridLevel& level) {
  os << "theta,ces\n";
  for (const auto& p : level.points) {
    os << format_real(p.theta) << ',' << p.best_ces << '\n';
  }
}

}  // namespace symest
