#include "symest/symbolic.hpp"

#include <ostream>

#include "symest/dynamics.hpp"
#include "symest/error.hpp"
#include "symest/format.hpp"

namespace symest {

SymbolicData::SymbolicData(std::vector<int> bits) : bits_(std::move(bits)) {
  for (int b : bits_) {
    if (b != 0 && b != 1) throw DomainError("symbolic data must contain only 0 and 1");
  }
}

Interval SymbolicData::cell(std::size_t i) const {
  if (i == 0) return MapModel::invariant_set();
  return cell_for_bit(bits_.at(i - 1));
}

SymbolicData SymbolicData::prefix(std::size_t m) const {
  if (m > bits_.size()) throw DomainError("prefix longer than the data");
  return SymbolicData(std::vector<int>(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(m)));
}

SymbolicData cells_from_bits(std::span<const int> bits) {
  if (bits.empty()) throw DomainError("empty bit sequence");
  return SymbolicData(std::vector<int>(bits.begin(), bits.end()));
}

RefinedCells refine_cells(const CandidateVector& center, double epsilon, const SymbolicData& base) {
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (center.size() > base.size() + 1) throw DomainError("candidate longer than data + 1");
  RefinedCells out{epsilon, {}};
  out.cells.reserve(center.size());
  for (std::size_t i = 0; i < center.size(); ++i) {
    const Interval window = Interval::open(center[i] - epsilon, center[i] + epsilon);
    const Interval cell = intersect(window, base.cell(i));
    if (cell.is_empty()) throw RefinementError("empty refined cell", i);
    out.cells.push_back(cell);
  }
  return out;
}

std::string format_bits(std::span<const int> bits) {
  std::string line;
  line.reserve(bits.size());
  for (int b : bits) line.push_back(b == 0 ? '0' : '1');
  return line;
}

std::vector<int> parse_bits(const std::string& line) {
  std::vector<int> bits;
  bits.reserve(line.size());
  for (char c : line) {
    if (c == '0' || c == '1') {
      bits.push_back(c - '0');
    } else if (c != '\n' && c != '\r' && c != ' ' && c != '\t') {
      throw IoError(std::string("unexpected character in bit line: '") + c + "'");
    }
  }
  return bits;
}

void write_cells_csv(std::ostream& os, std::span<const Interval> cells, std::size_t first_index) {
  os << "index,lower,upper\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    os << (first_index + i) << ',' << format_real(cells[i].lower) << ','
       << format_real(cells[i].upper) << '\n';
  }
}

}  // namespace symest
