#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/strength.hpp"

using namespace symest;

namespace {

std::vector<double> orbit_with_start(double theta, double y0, std::size_t n) {
  std::vector<double> y{y0};
  const auto v = iterate(theta, y0, n).values;
  y.insert(y.end(), v.begin(), v.end());
  return y;
}

}  // namespace

TEST_CASE("the true orbit has full strength everywhere") {
  const std::size_t n = 400;
  const auto y = orbit_with_start(-1.71, 0.8, n);
  const SymbolicData data(simulate_symbolic(-1.71, 0.8, n));
  for (std::size_t i = 0; i <= n; i += 37) CHECK(point_strength(-1.71, y[i], i, data) == n - i);

  const StrengthProfile p = cumulative_strength(-1.71, CandidateVector{y}, data);
  CHECK(p.ces == n * (n + 1) / 2);
  CHECK(p.per_index.back() == 0);
}

TEST_CASE("strength edge cases") {
  const SymbolicData data(std::vector<int>{0, 1, 0, 1});
  CHECK(point_strength(-1.71, 0.0, 0, data) == 0);
  CHECK(point_strength(-1.71, 0.3, 4, data) == 0);
  CHECK(point_strength(-1.71, 0.8, 3, data) == 0);
  CHECK(point_strength(-1.71, 0.1, 3, data) == 1);
  CHECK_THROWS_AS(point_strength(-1.71, 0.3, 5, data), DomainError);

  const StrengthProfile zeros = cumulative_strength(-1.71, CandidateVector{std::vector<double>(5, 0.0)}, data);
  CHECK(zeros.per_index[0] == 0);
  CHECK_THROWS_AS(cumulative_strength(-1.71, CandidateVector{std::vector<double>(4, 0.0)}, data),
                  DomainError);
}

TEST_CASE("non-finite starts and boundary images end the prefix") {
  const SymbolicData data(std::vector<int>{1, 1, 1});
  CHECK(point_strength(-1.5, std::nan(""), 0, data) == 0);
  CHECK(point_strength(-1.5, 1.0, 1, data) == 0);
}

TEST_CASE("incremental profile equals the definition scan") {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> th(-2.0, -1.2), u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + gen() % 50;
    const double theta = th(gen);
    // Half the instances use real orbits so long prefixes occur.
    std::vector<int> bits;
    std::vector<double> cand(n + 1);
    if (trial % 2 == 0) {
      bits = simulate_symbolic(theta, 0.37, n);
      const auto y = orbit_with_start(theta, 0.37, n);
      for (std::size_t i = 0; i <= n; ++i) cand[i] = y[i] + 1e-9 * u(gen);
    } else {
      bits.resize(n);
      for (auto& b : bits) b = static_cast<int>(gen() & 1);
      for (auto& c : cand) c = u(gen);
    }
    const SymbolicData data(bits);
    const StrengthProfile p = cumulative_strength(theta, CandidateVector{cand}, data);
    std::size_t sum = 0;
    for (std::size_t i = 0; i <= n; ++i) {
      CHECK(p.per_index[i] == oracle::strength(theta, cand[i], i, bits));
      CHECK(p.per_index[i] <= n - i);
      if (i < n) sum += p.per_index[i];
    }
    CHECK(p.ces == sum);
  }
}

TEST_CASE("select_anchor") {
  StrengthProfile p;
  p.per_index = {3, 30, 2, 25, 21, 20, 0};
  CHECK(select_anchor(p, 20) == 4);
  CHECK(select_anchor(p, 29) == 1);
  CHECK_THROWS_AS(select_anchor(p, 30), AnchorNotFoundError);
  CHECK_THROWS_AS(select_anchor(p, 0), DomainError);

  StrengthProfile single;
  single.per_index = std::vector<std::size_t>(10, 0);
  single.per_index[7] = 50;
  CHECK(select_anchor(single, 20) == 7);
}

TEST_CASE("backward_refine follows the signed inverse from the anchor") {
  const double theta = -1.71;
  const auto truth = orbit_with_start(theta, 0.8, 120);
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> noise(-1e-3, 1e-3);
  std::vector<double> bar(truth);
  for (auto& v : bar) v += noise(gen);
  const CandidateVector cand{bar};

  const std::size_t kappa = 100;
  const CandidateVector r = backward_refine(theta, cand, kappa);
  REQUIRE(r.size() == kappa + 1);
  CHECK(r[kappa] == bar[kappa]);
  const double u1 = std::numeric_limits<double>::epsilon();
  double err_bar = 0.0, err_ref = 0.0;
  for (std::size_t i = 0; i < kappa; ++i) {
    CHECK(std::abs(evaluate(theta, r[i]) - r[i + 1]) <= 2 * u1);
    CHECK(branch_sign(r[i]) == branch_sign(bar[i]));
    if (i <= 80) {
      err_bar = std::max(err_bar, std::abs(bar[i] - truth[i]));
      err_ref = std::max(err_ref, std::abs(r[i] - truth[i]));
    }
  }
  CHECK(err_ref * 10 <= err_bar);

  CHECK(backward_refine(theta, cand, 0).values == std::vector<double>{bar[0]});
}

TEST_CASE("backward_refine reports the failing index") {
  // y~_3 = -0.9 has preimages of modulus sqrt(1.9 / 1.2) > 1, whose image
  // under the next inversion has a negative radicand.
  const CandidateVector cand{{0.5, 0.5, 0.5, -0.9}};
  try {
    backward_refine(-1.2, cand, 3);
    FAIL("expected InversionDomainError");
  } catch (const InversionDomainError& e) {
    CHECK(e.index() == 1);
  }
  CHECK_THROWS_AS(backward_refine(-1.2, cand, 4), DomainError);
}

TEST_CASE("strengths CSV") {
  StrengthProfile p;
  p.per_index = {2, 1, 0};
  p.ces = 3;
  std::ostringstream os;
  write_strengths_csv(os, p);
  CHECK(os.str() == "index,strength\n0,2\n1,1\n2,0\n");
}
