#include "ceor/complex_text.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "ceor/errors.hpp"

namespace ceor {

namespace {

// Consumes one signed decimal number starting at pos. Returns false if the
// text at pos does not begin with a number.
bool take_number(std::string_view text, std::size_t& pos, double& out) {
  if (pos >= text.size()) return false;
  const std::string tail(text.substr(pos));
  const char* begin = tail.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin) return false;
  // strtod accepts leading whitespace and hex floats; the literal form does not.
  for (const char* p = begin; p != end; ++p) {
    const char c = *p;
    const bool ok = (c >= '0' && c <= '9') || c == '+' || c == '-' ||
                    c == '.' || c == 'e' || c == 'E';
    if (!ok) return false;
  }
  pos += static_cast<std::size_t>(end - begin);
  out = v;
  return true;
}

bool is_imag_mark(char c) { return c == 'i' || c == 'j'; }

}  // namespace

Complex parse_complex(std::string_view text) {
  if (text.empty()) throw TextParseError("empty complex literal");
  std::size_t pos = 0;
  double first = 0.0;
  bool have_first = take_number(text, pos, first);

  if (!have_first) {
    // Pure "i" / "+i" / "-i".
    double sign = 1.0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      if (text[pos] == '-') sign = -1.0;
      ++pos;
    }
    if (pos + 1 == text.size() && is_imag_mark(text[pos]))
      return Complex(0.0, sign);
    throw TextParseError("bad complex literal: " + std::string(text));
  }

  if (pos == text.size()) return Complex(first, 0.0);

  if (is_imag_mark(text[pos]) && pos + 1 == text.size())
    return Complex(0.0, first);

  // "a+bi" / "a-bi"; the sign belongs to the imaginary number itself.
  if (text[pos] != '+' && text[pos] != '-')
    throw TextParseError("bad complex literal: " + std::string(text));
  double second = 0.0;
  if (!take_number(text, pos, second)) {
    // "a+i" / "a-i".
    const double sign = text[pos] == '-' ? -1.0 : 1.0;
    ++pos;
    if (pos + 1 == text.size() && is_imag_mark(text[pos]))
      return Complex(first, sign);
    throw TextParseError("bad complex literal: " + std::string(text));
  }
  if (pos + 1 == text.size() && is_imag_mark(text[pos]))
    return Complex(first, second);
  throw TextParseError("bad complex literal: " + std::string(text));
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string format_complex(const Complex& z) {
  std::string out = format_double(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    out += '-';
    out += format_double(-im);
  } else {
    out += '+';
    out += format_double(im);
  }
  out += 'i';
  return out;
}

}  // namespace ceor
