#pragma once

#include <complex>
#include <string>
#include <string_view>

namespace ceor {

using Complex = std::complex<double>;

// Parses the "a+bi" literal form used by the CLI and config files:
// "2", "-0.5", "0.5+14.134725i", "1-2i", "3i", "-i". Whitespace is not
// allowed inside the literal. Throws TextParseError on anything else.
Complex parse_complex(std::string_view text);

// Inverse of parse_complex; always emits both parts ("a+bi" / "a-bi").
std::string format_complex(const Complex& z);

// Shortest decimal text that parses back to exactly `value`. Deterministic
// across runs; used everywhere a report or CLI line prints a double.
std::string format_double(double value);

}  // namespace ceor
