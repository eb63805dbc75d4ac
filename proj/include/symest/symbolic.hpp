#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "symest/candidate.hpp"
#include "symest/interval.hpp"

namespace symest {

/// Cell (-1, 0) for bit 0 and [0, 1) for bit 1.
constexpr Interval cell_for_bit(int bit) {
  return bit == 0 ? Interval::open(-1.0, 0.0) : Interval::closed_open(0.0, 1.0);
}

/// Censored observations b_1..b_n and their cells D_1..D_n.
class SymbolicData {
 public:
  SymbolicData() = default;
  explicit SymbolicData(std::vector<int> bits);

  /// Number of observations n.
  std::size_t size() const { return bits_.size(); }
  const std::vector<int>& bits() const { return bits_; }

  /// D_i for 1 <= i <= n; index 0 yields the invariant set X.
  Interval cell(std::size_t i) const;

  /// Observations b_1..b_m as a new data set.
  SymbolicData prefix(std::size_t m) const;

  friend bool operator==(const SymbolicData&, const SymbolicData&) = default;

 private:
  std::vector<int> bits_;
};

SymbolicData cells_from_bits(std::span<const int> bits);

/// Cells D_0^eps .. D_n^eps centred on a candidate orbit.
struct RefinedCells {
  double epsilon = 0.0;
  std::vector<Interval> cells;

  std::size_t size() const { return cells.size(); }
  const Interval& operator[](std::size_t i) const { return cells[i]; }
};

/// Cell i = (center[i] - eps, center[i] + eps) intersected with D_i (X for i = 0).
/// `center` may be shorter than n + 1; the result then covers indices
/// 0..center.size()-1. Throws RefinementError naming the first empty cell.
RefinedCells refine_cells(const CandidateVector& center, double epsilon, const SymbolicData& base);

// Text formats: bits are a single line of '0'/'1'; cell tables are CSV with
// header "index,lower,upper".
std::string format_bits(std::span<const int> bits);
std::vector<int> parse_bits(const std::string& line);
void write_cells_csv(std::ostream& os, std::span<const Interval> cells, std::size_t first_index);

}  // namespace symest
