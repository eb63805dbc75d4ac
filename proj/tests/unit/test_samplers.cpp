#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/rng.hpp"
#include "symest/samplers.hpp"

using namespace symest;

namespace {

constexpr int kDraws = 100000;

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * M_PI); }
double upper_tail(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Mean and variance of the standard normal truncated to (a, b), from the
/// closed forms. Valid for a >= 0 where the upper-tail masses do not cancel.
std::pair<double, double> truncated_moments(double a, double b) {
  const double z = upper_tail(a) - upper_tail(b);
  const double m = (normal_pdf(a) - normal_pdf(b)) / z;
  const double pb = std::isinf(b) ? 0.0 : b * normal_pdf(b);
  const double v = 1.0 + (a * normal_pdf(a) - pb) / z - m * m;
  return {m, v};
}

std::vector<double> histogram(const std::vector<double>& xs, double lo, double hi, int bins) {
  std::vector<double> h(bins, 0.0);
  for (double x : xs) {
    int k = static_cast<int>((x - lo) / (hi - lo) * bins);
    h[std::clamp(k, 0, bins - 1)] += 1.0;
  }
  return h;
}

/// Exact draws from an unnormalized density bounded by 1 on (lo, hi).
std::vector<double> rejection_draws(std::mt19937_64& gen, double lo, double hi, int count,
                                    const std::function<double(double)>& density) {
  std::uniform_real_distribution<double> u(lo, hi), a(0.0, 1.0);
  std::vector<double> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    const double y = u(gen);
    if (a(gen) < density(y)) out.push_back(y);
  }
  return out;
}

}  // namespace

TEST_CASE("rng streams are reproducible and split independently") {
  RngStream a(42), b(42);
  CHECK(a.next_u64() == b.next_u64());
  RngStream c(42, 1);
  CHECK(c.next_u64() == a.next_u64());
  CHECK(RngStream(42).split(1001).next_u64() == RngStream(42).split(1001).next_u64());
  CHECK(RngStream(42).split(1001).next_u64() != RngStream(42).split(1002).next_u64());
  CHECK(grid_stream_id(3, 7) == 3007);

  RngStream r(9);
  double lo = 1.0, hi = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const double x = r.next_open01();
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
}

TEST_CASE("sample_uniform") {
  RngStream r(42);
  double sum = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const double x = sample_uniform(r, Interval::open(0, 1));
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  CHECK(std::abs(sum / kDraws - 0.5) < 0.005);

  RngStream s1(42), s2(42);
  CHECK(sample_uniform(s1, Interval::open(0, 1)) == sample_uniform(s2, Interval::open(0, 1)));

  CHECK_THROWS_AS(sample_uniform(r, Interval::empty()), EmptySupportError);
  const double x = 0.3;
  CHECK_THROWS_AS(sample_uniform(r, Interval::open(x, std::nextafter(x, 1.0))), EmptySupportError);
  CHECK(sample_uniform(r, Interval::closed(x, x)) == x);
}

TEST_CASE("truncated exponential") {
  CHECK(truncated_exponential_from_uniform(1.0, 3.0, 0.25) == 0.25);
  CHECK(truncated_exponential_from_uniform(std::exp(-1.0), 4.0, 0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(truncated_exponential_from_uniform(0.5, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(truncated_exponential_from_uniform(0.5, -1.0, 0.0), DomainError);

  const double lambda = 5e15, lower = 1e-16;
  RngStream r(7);
  double sum = 0.0;
  for (int k = 0; k < kDraws; ++k) {
    const double u = sample_truncated_exponential(r, lambda, lower);
    REQUIRE(u > lower);
    sum += u - lower;
  }
  CHECK(std::abs(sum / kDraws * lambda - 1.0) < 0.02);
}

TEST_CASE("truncated normal on a wide interval") {
  RngStream r(1);
  std::vector<double> xs(kDraws);
  double sum = 0.0;
  for (auto& x : xs) sum += (x = sample_truncated_normal(r, 0.0, 1.0, Interval::open(-1e6, 1e6)));
  CHECK(std::abs(sum / kDraws) < 0.01);
}

TEST_CASE("truncated normal one-sided and symmetric cases") {
  RngStream r(2);
  for (int k = 0; k < 10000; ++k) {
    REQUIRE(sample_truncated_normal(r, 3.0, 0.5, Interval::open(-5.0, 2.0)) < 3.0);
  }

  std::vector<double> xs(kDraws);
  for (auto& x : xs) x = sample_truncated_normal(r, 0.4, 0.01, Interval::open(0.2, 0.6));
  std::nth_element(xs.begin(), xs.begin() + kDraws / 2, xs.end());
  CHECK(std::abs(xs[kDraws / 2] - 0.4) < 0.004);
}

TEST_CASE("truncated normal moments across the regimes") {
  // Standardized intervals (a, b): central, shoulder, beyond the eight sd
  // switch to rejection, and deep in the tail.
  const std::pair<double, double> cases[] = {{0.0, 1.5}, {2.0, 4.0}, {7.5, 8.5}, {9.0, 9.3}, {25.0, 60.0}};
  RngStream r(3);
  const double mean = -1.71, sd = 2e-4;
  for (auto [a, b] : cases) {
    const auto [m, v] = truncated_moments(a, b);
    double s1 = 0.0, s2 = 0.0;
    for (int k = 0; k < kDraws; ++k) {
      const double x = sample_truncated_normal(r, mean, sd * sd, Interval::open(mean + a * sd, mean + b * sd));
      REQUIRE(x > mean + a * sd);
      REQUIRE(x < mean + b * sd);
      const double z = (x - mean) / sd;
      s1 += z;
      s2 += z * z;
    }
    const double em = s1 / kDraws;
    const double ev = s2 / kDraws - em * em;
    const double se = std::sqrt(v / kDraws);
    CAPTURE(a);
    CHECK(std::abs(em - m) < 3 * se + 1e-9);
    CHECK(std::abs(ev / v - 1.0) < 0.03);

    // Mirror image below the mean.
    double t1 = 0.0;
    for (int k = 0; k < 20000; ++k) {
      t1 += (sample_truncated_normal(r, mean, sd * sd, Interval::open(mean - b * sd, mean - a * sd)) - mean) / sd;
    }
    CHECK(std::abs(t1 / 20000 + m) < 3 * std::sqrt(v / 20000) + 1e-9);
  }
}

TEST_CASE("truncated normal errors") {
  RngStream r(4);
  CHECK_THROWS_AS(sample_truncated_normal(r, 0.0, 1.0, Interval::open(41.0, 42.0)), NumericalUnderflowError);
  CHECK_THROWS_AS(sample_truncated_normal(r, 0.0, 1.0, Interval::open(-50.0, -40.5)), NumericalUnderflowError);
  CHECK_THROWS_AS(sample_truncated_normal(r, 0.0, 0.0, Interval::open(0.0, 1.0)), DomainError);
  CHECK_THROWS_AS(sample_truncated_normal(r, 0.0, 1.0, Interval::empty()), EmptySupportError);
  CHECK_NOTHROW(sample_truncated_normal(r, 0.0, 1.0, Interval::open(39.0, 42.0)));
}

TEST_CASE("quadratic slice pieces") {
  // s <= 0: y_next + sqrt(u2) >= 1.
  const SlicePieces one = quadratic_slice_pieces(-1.71, 0.04, 0.9, Interval::open(-1, 1));
  REQUIRE(one.count == 1);
  const double r1 = (0.9 - 0.2 - 1.0) / -1.71;
  CHECK(one.pieces[0] == Interval::open(-std::sqrt(r1), std::sqrt(r1)));
  CHECK(one.first_weight == 1.0);

  // Two symmetric pieces; clipping the right one with the window gives
  // lengths in a 3:1 ratio.
  const double theta = -1.0, u2 = 0.01, y_next = 0.5;
  const double s = (y_next + 0.1 - 1.0) / theta, r = (y_next - 0.1 - 1.0) / theta;
  const double ss = std::sqrt(s), sr = std::sqrt(r);
  const double len = sr - ss;
  const SlicePieces two = quadratic_slice_pieces(theta, u2, y_next, Interval::open(-1, ss + len / 3));
  REQUIRE(two.count == 2);
  CHECK(two.pieces[0].lower == doctest::Approx(-sr));
  CHECK(two.pieces[0].upper == doctest::Approx(-ss));
  CHECK(two.first_weight == doctest::Approx(0.75).epsilon(1e-12));

  const SlicePieces right = quadratic_slice_pieces(theta, u2, y_next, Interval::closed_open(0, 1));
  REQUIRE(right.count == 1);
  CHECK(right.pieces[0] == Interval::open(ss, sr));

  CHECK_THROWS_AS(quadratic_slice_pieces(-1.0, 0.01, 1.5, Interval::open(-1, 1)), EmptySupportError);
  CHECK_THROWS_AS(quadratic_slice_pieces(theta, u2, y_next, Interval::open(-0.2, 0.2)), EmptySupportError);
  CHECK_THROWS_AS(quadratic_slice_pieces(0.0, u2, y_next, Interval::open(-1, 1)), DomainError);
  CHECK_THROWS_AS(quadratic_slice_pieces(theta, 0.0, y_next, Interval::open(-1, 1)), DomainError);
}

TEST_CASE("slice pieces contain the point that generated them") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> th(-2.0, -0.5), yy(-0.999, 0.999), uu(0.0, 1.0);
  RngStream r(8);
  for (int k = 0; k < kDraws; ++k) {
    const double theta = th(gen), y = yy(gen), next = yy(gen);
    const double d = next - map_value(theta, y);
    const double u2 = sample_truncated_exponential(r, 50.0, d * d);
    const Interval window = Interval::open(-1, 1);
    const SlicePieces p = quadratic_slice_pieces(theta, u2, next, window);
    // The set boundary is computed, so allow a couple of ulps of slack.
    const double eps = 4e-16;
    bool inside = p.contains(y);
    for (std::size_t i = 0; i < p.count && !inside; ++i) {
      inside = y > p.pieces[i].lower - eps && y < p.pieces[i].upper + eps;
    }
    REQUIRE(inside);
  }
}

TEST_CASE("slice update has the conditional as its stationary law") {
  // Interior site: density I(cell) exp(-lambda [(y - g(prev))^2 + (next - g(y))^2]).
  const double theta = -1.5, lambda = 50.0, prev = 0.3, next = 0.2;
  const Interval cell = Interval::closed_open(0, 1);
  auto density = [&](double y) {
    const double a = y - map_value(theta, prev), b = next - map_value(theta, y);
    return std::exp(-lambda * (a * a + b * b));
  };
  std::mt19937_64 gen(12);
  const auto start = rejection_draws(gen, 0.0, 1.0, kDraws, density);
  const auto oracle_draws = rejection_draws(gen, 0.0, 1.0, kDraws, density);

  RngStream r(12);
  std::vector<double> one_step(kDraws), chain(kDraws);
  for (int k = 0; k < kDraws; ++k) {
    one_step[k] = slice_update_site(r, theta, lambda, start[k], prev, next, cell);
    REQUIRE(cell.contains(one_step[k]));
  }
  double y = 0.5;
  for (int k = 0; k < kDraws; ++k) chain[k] = y = slice_update_site(r, theta, lambda, y, prev, next, cell);

  const auto ref = histogram(oracle_draws, 0.0, 1.0, 50);
  CHECK(oracle::total_variation(histogram(one_step, 0.0, 1.0, 50), ref) < 0.03);
  CHECK(oracle::total_variation(histogram(chain, 0.0, 1.0, 50), ref) < 0.03);
}

TEST_CASE("first-site update with two pieces") {
  // No predecessor; next = -0.5 puts mass on both signs of y.
  const double theta = -1.71, lambda = 20.0, next = -0.5;
  const Interval cell = Interval::open(-1, 1);
  auto density = [&](double y) {
    const double b = next - map_value(theta, y);
    return std::exp(-lambda * b * b);
  };
  std::mt19937_64 gen(13);
  const auto oracle_draws = rejection_draws(gen, -1.0, 1.0, kDraws, density);
  RngStream r(13);
  std::vector<double> chain(kDraws);
  double y = 0.1;
  for (int k = 0; k < kDraws; ++k) chain[k] = y = slice_update_site(r, theta, lambda, y, std::nullopt, next, cell);
  CHECK(oracle::total_variation(histogram(chain, -1.0, 1.0, 50), histogram(oracle_draws, -1.0, 1.0, 50)) < 0.03);
}

TEST_CASE("last-site update is the truncated normal around the image of prev") {
  const double theta = -1.71, lambda = 8.0, prev = 0.2;
  const Interval cell = Interval::open(-1, 0);
  auto density = [&](double y) {
    const double a = y - map_value(theta, prev);
    return std::exp(-lambda * a * a);
  };
  std::mt19937_64 gen(14);
  const auto oracle_draws = rejection_draws(gen, -1.0, 0.0, kDraws, density);
  RngStream r(14);
  std::vector<double> xs(kDraws);
  for (auto& x : xs) {
    x = truncated_normal_update_last(r, theta, lambda, -0.5, prev, cell);
    REQUIRE(cell.contains(x));
  }
  CHECK(oracle::total_variation(histogram(xs, -1.0, 0.0, 50), histogram(oracle_draws, -1.0, 0.0, 50)) < 0.03);

  // Hopeless truncation falls back to the slice update and stays in the cell.
  const double far = truncated_normal_update_last(r, theta, 5e15, -0.5, prev, cell);
  CHECK(cell.contains(far));
}

TEST_CASE("slice update keeps the current value when it lies outside the window") {
  RngStream r(15);
  const double cur = 0.7;
  CHECK(slice_update_site(r, -1.5, 50.0, cur, 0.3, 0.2, Interval::open(-1, 0)) == cur);
}

TEST_CASE("sampler stack is a pure function of the stream") {
  auto run = [](std::uint64_t seed) {
    RngStream r(seed);
    std::vector<double> out;
    double y = 0.4;
    for (int k = 0; k < 1000; ++k) {
      y = slice_update_site(r, -1.71, 1e4, y, 0.6, 0.1, Interval::closed_open(0, 1));
      out.push_back(y);
      out.push_back(sample_truncated_normal(r, y, 1e-6, Interval::open(y - 1e-2, y + 1e-5)));
    }
    return out;
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
}
