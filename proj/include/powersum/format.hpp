// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "powersum/types.hpp"

namespace powersum {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_double(double x);

/// Parses a decimal floating literal; the whole string must be consumed.
double parse_double(std::string_view text);

/// Parses complex literals of the form `a`, `bi`, `a+bi`, `a - bi`, `i`, `-i`.
/// Whitespace is allowed around the sign between the parts.
Complex parse_complex(std::string_view text);

/// Splits a literal into its real and imaginary decimal substrings ("0" when
/// absent), so exact consumers can parse them without going through double.
std::pair<std::string, std::string> split_complex_literal(std::string_view text);

/// Comma separated list of complex literals.
std::vector<Complex> parse_complex_list(std::string_view text);
std::vector<std::string> split_list(std::string_view text);

}  // namespace powersum
