#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/symbolic.hpp"

namespace symest {

/// Per-index estimating strengths S_0..S_n and their cumulative sum
/// CES = S_0 + ... + S_{n-1}.
struct StrengthProfile {
  std::vector<std::size_t> per_index;
  std::size_t ces = 0;
};

/// Number of forward iterates of `y` (started at position `index`) that land
/// in the observed cells: the largest k with g^(j)(theta, y) in D_{index+j}
/// for every 1 <= j <= k. An iterate that is not finite or leaves [-1, 1]
/// ends the prefix.
std::size_t point_strength(double theta, double y, std::size_t index, const SymbolicData& data);

/// Throws DomainError unless candidate.size() == data.size() + 1.
StrengthProfile cumulative_strength(double theta, const CandidateVector& candidate,
                                    const SymbolicData& data);

/// Largest index whose strength exceeds `threshold`.
std::size_t select_anchor(const StrengthProfile& profile, std::size_t threshold);

/// Recompute y_0..y_kappa from the anchor y_kappa by repeated signed inverse
/// branches at theta_star, taking each branch sign from the candidate.
/// InversionDomainError carries the index whose preimage failed.
CandidateVector backward_refine(double theta_star, const CandidateVector& candidate,
                                std::size_t kappa);

void write_strengths_csv(std::ostream& os, const StrengthProfile& profile);

}  // namespace symest
