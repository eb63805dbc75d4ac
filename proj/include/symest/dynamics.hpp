#pragma once

#include <cstddef>
#include <vector>

#include "symest/interval.hpp"

namespace symest {

/// The quadratic map g(theta, y) = 1 + theta * y^2 together with its
/// parameter space and invariant set.
///
/// The map is affine in theta: g(theta, y) = alpha(y) + beta(y) * theta with
/// alpha(y) = 1 and beta(y) = y^2. Every evaluation in the library goes
/// through `map_value`, which computes exactly that expression, so the
/// affine decomposition and `evaluate` agree bit for bit.
struct MapModel {
  /// Theta = [-2, 0).
  static constexpr Interval theta_space() { return Interval::closed_open(-2.0, 0.0); }
  /// X = (-1, 1).
  static constexpr Interval invariant_set() { return Interval::open(-1.0, 1.0); }
  static constexpr Interval invariant_closure() { return Interval::closed(-1.0, 1.0); }

  static constexpr double alpha(double /*y*/) { return 1.0; }
  static constexpr double beta(double y) { return y * y; }
};

/// Unchecked map evaluation for hot loops.
constexpr double map_value(double theta, double y) {
  return MapModel::alpha(y) + MapModel::beta(y) * theta;
}

/// Forward orbit y*_1..y*_k of a starting point y0.
struct Orbit {
  double theta = 0.0;
  double y0 = 0.0;
  std::vector<double> values;
};

/// g(theta, y). Throws DomainError if theta is outside [-2, 0) or y is not finite.
double evaluate(double theta, double y);

/// First `k` iterates of y0. Throws EscapeError naming the first index whose
/// value leaves [-1, 1] (1-based, matching orbit indexing y*_1..y*_k).
Orbit iterate(double theta, double y0, std::size_t k);

/// Bits b_i = 0 if y*_i < 0, else 1, for i = 1..n.
std::vector<int> simulate_symbolic(double theta, double y0, std::size_t n);

/// sign * sqrt((y_next - 1) / theta); the preimage of y_next on the branch
/// with the given sign. `sign` >= 0 selects the nonnegative branch.
///
/// Throws InversionDomainError (index 0) on a negative radicand.
double inverse_branch(double theta, double y_next, int sign);

/// Sign convention used for branch selection: 0 counts as positive.
constexpr int branch_sign(double y) { return y < 0.0 ? -1 : 1; }

}  // namespace symest
