#include "symest/samplers.hpp"

#include <cmath>

#include <boost/math/special_functions/erf.hpp>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"

namespace symest {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
// Standardized distance beyond which the inverse CDF gives way to rejection.
constexpr double kTailSwitch = 8.0;
constexpr double kUnderflowSd = 40.0;
constexpr int kMaxUniformRetries = 64;

// Upper-tail probability Q(x) = P(Z > x).
double upper_tail(double x) { return 0.5 * std::erfc(x / kSqrt2); }

// Standard normal restricted to [a, b] with 0 <= a < b, a large. Truncated
// exponential proposal with Robert's rate.
double sample_far_tail(RngStream& rng, double a, double b) {
  const double rate = 0.5 * (a + std::sqrt(a * a + 4.0));
  const double span = b - a;
  // Mass of the proposal on [a, b]: 1 - exp(-rate * span).
  const double mass = std::isinf(span) ? 1.0 : -std::expm1(-rate * span);
  for (;;) {
    const double x = a - std::log1p(-rng.next_open01() * mass) / rate;
    const double d = x - rate;
    if (std::log(rng.next_open01()) < -0.5 * d * d && x <= b) return x;
  }
}

// Standard normal restricted to [a, b] with 0 <= a < b < inf or b = inf,
// via the complementary CDF so the tail keeps full relative precision.
double sample_upper_inverse_cdf(RngStream& rng, double a, double b) {
  const double qa = upper_tail(a);
  const double qb = std::isinf(b) ? 0.0 : upper_tail(b);
  const double q = qb + rng.next_open01() * (qa - qb);
  if (!(q > 0.0)) return a;
  return kSqrt2 * boost::math::erfc_inv(2.0 * q);
}

// Standard normal restricted to [a, b] with a < 0 < b.
double sample_central_inverse_cdf(RngStream& rng, double a, double b) {
  const double pa = std::isinf(a) ? 0.0 : upper_tail(-a);
  const double pb = std::isinf(b) ? 1.0 : 1.0 - upper_tail(b);
  const double p = pa + rng.next_open01() * (pb - pa);
  if (!(p > 0.0)) return a;
  if (!(p < 1.0)) return b;
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

double sample_standard_truncated(RngStream& rng, double a, double b) {
  if (a >= 0.0) {
    return a > kTailSwitch ? sample_far_tail(rng, a, b) : sample_upper_inverse_cdf(rng, a, b);
  }
  if (b <= 0.0) {
    return -(-b > kTailSwitch ? sample_far_tail(rng, -b, -a) : sample_upper_inverse_cdf(rng, -b, -a));
  }
  return sample_central_inverse_cdf(rng, a, b);
}

}  // namespace

double sample_uniform(RngStream& rng, const Interval& interval) {
  if (interval.is_empty()) throw EmptySupportError("uniform draw from an empty interval");
  if (interval.lower == interval.upper) return interval.lower;
  if (!std::isfinite(interval.lower) || !std::isfinite(interval.upper)) {
    throw EmptySupportError("uniform draw from an unbounded interval");
  }
  const double width = interval.upper - interval.lower;
  for (int attempt = 0; attempt < kMaxUniformRetries; ++attempt) {
    const double x = interval.lower + rng.next_open01() * width;
    if (x > interval.lower && x < interval.upper) return x;
  }
  throw EmptySupportError("interval has no representable interior point");
}

double truncated_exponential_from_uniform(double q, double lambda, double lower) {
  if (!(lambda > 0.0)) throw DomainError("exponential rate must be positive");
  return lower - std::log(q) / lambda;
}

double sample_truncated_exponential(RngStream& rng, double lambda, double lower) {
  return truncated_exponential_from_uniform(rng.next_open01(), lambda, lower);
}

double sample_truncated_normal(RngStream& rng, double mean, double variance, const Interval& interval) {
  if (!(variance > 0.0)) throw DomainError("normal variance must be positive");
  if (interval.is_empty()) throw EmptySupportError("truncated normal on an empty interval");
  const double sd = std::sqrt(variance);
  const double a = (interval.lower - mean) / sd;
  const double b = (interval.upper - mean) / sd;
  if (a >= kUnderflowSd || b <= -kUnderflowSd) {
    throw NumericalUnderflowError("truncation interval carries no normal mass");
  }
  if (interval.lower == interval.upper) return interval.lower;
  const double z = sample_standard_truncated(rng, a, b);
  double x = mean + sd * z;
  // Rounding can push the draw onto or past an endpoint.
  if (!interval.contains(x)) {
    x = std::fmin(std::fmax(x, interval.lower), interval.upper);
    if (!interval.contains(x)) x = sample_uniform(rng, interval);
  }
  return x;
}

SlicePieces quadratic_slice_pieces(double theta, double u2, double y_next, const Interval& window) {
  if (!(theta < 0.0)) throw DomainError("slice pieces need theta < 0");
  if (!(u2 > 0.0)) throw DomainError("auxiliary variable must be positive");
  const double root = std::sqrt(u2);
  const double s = (y_next + root - 1.0) / theta;
  const double r = (y_next - root - 1.0) / theta;
  if (!(r > 0.0)) throw EmptySupportError("slice set is empty (r <= 0)");
  const double sr = std::sqrt(r);

  SlicePieces out;
  if (s <= 0.0) {
    const Interval piece = intersect(window, Interval::open(-sr, sr));
    if (piece.is_empty()) throw EmptySupportError("slice set misses the window");
    out.pieces[0] = piece;
    out.count = 1;
    return out;
  }
  const double ss = std::sqrt(s);
  const Interval neg = intersect(window, Interval::open(-sr, -ss));
  const Interval pos = intersect(window, Interval::open(ss, sr));
  if (!neg.is_empty()) out.pieces[out.count++] = neg;
  if (!pos.is_empty()) out.pieces[out.count++] = pos;
  if (out.count == 0) throw EmptySupportError("slice set misses the window");
  if (out.count == 2) {
    const double total = neg.length() + pos.length();
    out.first_weight = total > 0.0 ? neg.length() / total : 0.5;
  }
  return out;
}

double sample_pieces(RngStream& rng, const SlicePieces& pieces) {
  if (pieces.count == 0) throw EmptySupportError("no slice pieces");
  if (pieces.count == 1) return sample_uniform(rng, pieces.pieces[0]);
  const bool first = rng.next_open01() < pieces.first_weight;
  return sample_uniform(rng, pieces.pieces[first ? 0 : 1]);
}

double slice_update_site(RngStream& rng, double theta, double lambda, double current,
                         std::optional<double> prev, std::optional<double> next,
                         const Interval& cell) {
  Interval window = cell;
  if (prev) {
    const double mean = map_value(theta, *prev);
    const double d = current - mean;
    const double u1 = sample_truncated_exponential(rng, lambda, d * d);
    const double w = std::sqrt(u1);
    window = intersect(cell, Interval::open(mean - w, mean + w));
  }
  if (!window.contains(current)) return current;

  SlicePieces pieces;
  if (next) {
    const double d = *next - map_value(theta, current);
    const double u2 = sample_truncated_exponential(rng, lambda, d * d);
    try {
      pieces = quadratic_slice_pieces(theta, u2, *next, window);
    } catch (const EmptySupportError&) {
      return current;
    }
  } else {
    pieces.pieces[0] = window;
    pieces.count = 1;
  }
  if (!pieces.contains(current)) return current;
  try {
    return sample_pieces(rng, pieces);
  } catch (const EmptySupportError&) {
    return current;
  }
}

double truncated_normal_update_last(RngStream& rng, double theta, double lambda, double current,
                                    double prev, const Interval& cell) {
  try {
    return sample_truncated_normal(rng, map_value(theta, prev), 0.5 / lambda, cell);
  } catch (const NumericalUnderflowError&) {
    return slice_update_site(rng, theta, lambda, current, prev, std::nullopt, cell);
  }
}

}  // namespace symest
