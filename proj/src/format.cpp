#include "symest/format.hpp"

#include <cstdio>
#include <cstdlib>
#include <ostream>

#include "symest/error.hpp"
#include "symest/interval.hpp"

namespace symest {

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_real(const std::string& text) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  while (end && (*end == ' ' || *end == '\t' || *end == '\r' || *end == '\n')) ++end;
  if (end == begin || (end && *end != '\0')) throw IoError("not a number: '" + text + "'");
  return value;
}

std::ostream& operator<<(std::ostream& os, const Interval& i) {
  if (i.is_empty()) return os << "{}";
  return os << (i.closed_lower ? '[' : '(') << format_real(i.lower) << ", "
            << format_real(i.upper) << (i.closed_upper ? ']' : ')');
}

}  // namespace symest
