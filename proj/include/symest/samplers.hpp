#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "symest/interval.hpp"
#include "symest/rng.hpp"

namespace symest {

/// Uniform draw strictly inside `interval` (closed endpoints may be hit).
/// Throws EmptySupportError for an empty interval.
double sample_uniform(RngStream& rng, const Interval& interval);

/// lower - log(q) / lambda: the inverse-CDF map of an exponential with rate
/// lambda truncated to (lower, inf).
double truncated_exponential_from_uniform(double q, double lambda, double lower);

/// Exponential(rate lambda) conditioned to exceed `lower`.
double sample_truncated_exponential(RngStream& rng, double lambda, double lower);

/// Normal(mean, variance) conditioned on `interval`.
///
/// Inverse CDF on the interval's mass while the interval reaches within
/// eight standard deviations of the mean; beyond that, rejection from a
/// truncated exponential proposal. Throws NumericalUnderflowError if the
/// whole interval lies more than 40 standard deviations on one side.
double sample_truncated_normal(RngStream& rng, double mean, double variance, const Interval& interval);

/// Up to two disjoint intervals; the first is chosen with probability
/// `first_weight`.
struct SlicePieces {
  std::array<Interval, 2> pieces{};
  std::size_t count = 0;
  double first_weight = 1.0;

  bool contains(double y) const {
    for (std::size_t i = 0; i < count; ++i) {
      if (pieces[i].contains(y)) return true;
    }
    return false;
  }
};

/// Values y in `window` with |y_next - g(theta, y)| < sqrt(u2).
///
/// With s = (y_next + sqrt(u2) - 1) / theta and r = (y_next - sqrt(u2) - 1) / theta
/// the set is |y| < sqrt(r) when s <= 0 and sqrt(s) < |y| < sqrt(r) otherwise.
/// Empty pieces are dropped; throws EmptySupportError when r <= 0 or when
/// nothing of the set survives the window.
SlicePieces quadratic_slice_pieces(double theta, double u2, double y_next, const Interval& window);

/// Mixture-of-uniforms draw from `pieces`.
double sample_pieces(RngStream& rng, const SlicePieces& pieces);

/// Single-site auxiliary-variable update for the density
///   I(y in cell) * exp(-lambda * [(y - g(theta, prev))^2 + (next - g(theta, y))^2])
/// where either factor is dropped when the neighbour is absent.
///
/// If rounding makes the computed support empty or excludes `current`, the
/// current value is returned unchanged.
double slice_update_site(RngStream& rng, double theta, double lambda, double current,
                         std::optional<double> prev, std::optional<double> next,
                         const Interval& cell);

/// Update for the last site: Normal(g(theta, prev), 1 / (2 lambda)) truncated
/// to `cell`, falling back to `slice_update_site` when the truncated normal
/// underflows.
double truncated_normal_update_last(RngStream& rng, double theta, double lambda, double current,
                                    double prev, const Interval& cell);

}  // namespace symest
