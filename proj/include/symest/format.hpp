#pragma once

#include <string>

namespace symest {

/// Shortest decimal text that parses back to the same double ("%.17g").
std::string format_real(double x);

/// Strict full-string parse; throws IoError on trailing garbage.
double parse_real(const std::string& text);

}  // namespace symest
