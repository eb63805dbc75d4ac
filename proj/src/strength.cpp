#include "symest/strength.hpp"

#include <cmath>
#include <ostream>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"

namespace symest {

std::size_t point_strength(double theta, double y, std::size_t index, const SymbolicData& data) {
  const std::size_t n = data.size();
  if (index > n) throw DomainError("strength index beyond data length");
  std::size_t k = 0;
  double z = y;
  for (std::size_t pos = index + 1; pos <= n; ++pos) {
    z = map_value(theta, z);
    if (!(std::abs(z) <= 1.0)) break;
    if (!data.cell(pos).contains(z)) break;
    ++k;
  }
  return k;
}

StrengthProfile cumulative_strength(double theta, const CandidateVector& candidate,
                                    const SymbolicData& data) {
  const std::size_t n = data.size();
  if (candidate.size() != n + 1) throw DomainError("candidate length must be data length + 1");
  StrengthProfile profile;
  profile.per_index.resize(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    profile.per_index[i] = point_strength(theta, candidate[i], i, data);
    profile.ces += profile.per_index[i];
  }
  return profile;
}

std::size_t select_anchor(const StrengthProfile& profile, std::size_t threshold) {
  if (threshold < 1) throw DomainError("anchor threshold must be at least 1");
  for (std::size_t i = profile.per_index.size(); i-- > 0;) {
    if (profile.per_index[i] > threshold) return i;
  }
  throw AnchorNotFoundError("no strength exceeds the anchor threshold");
}

CandidateVector backward_refine(double theta_star, const CandidateVector& candidate,
                                std::size_t kappa) {
  if (kappa >= candidate.size()) throw DomainError("anchor index beyond candidate");
  if (!std::isfinite(candidate[kappa])) throw DomainError("anchor value is not finite");
  CandidateVector refined{std::vector<double>(kappa + 1)};
  refined[kappa] = candidate[kappa];
  for (std::size_t i = kappa; i-- > 0;) {
    try {
      refined[i] = inverse_branch(theta_star, refined[i + 1], branch_sign(candidate[i]));
    } catch (const InversionDomainError&) {
      throw InversionDomainError("negative radicand in backward refinement", i);
    }
  }
  return refined;
}

void write_strengths_csv(std::ostream& os, const StrengthProfile& profile) {
  os << "index,strength\n";
  for (std::size_t i = 0; i < profile.per_index.size(); ++i) {
    os << i << ',' << profile.per_index[i] << '\n';
  }
}

}  // namespace symest
