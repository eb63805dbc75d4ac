#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace symest {

/// Orbit estimate (y_0, ..., y_n): either the running posterior mean from a
/// strength chain or its inverse-map refinement.
struct CandidateVector {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  double& operator[](std::size_t i) { return values[i]; }
  std::span<const double> view() const { return values; }

  friend bool operator==(const CandidateVector&, const CandidateVector&) = default;
};

}  // namespace symest
