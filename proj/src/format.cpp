// SPDX-License-Identifier: Apache-2.0
#include "powersum/format.hpp"

#include <cctype>
#include <charconv>
#include <cmath>

namespace powersum {

std::string format_double(double x) {
  if (x == 0.0) return std::signbit(x) ? "-0" : "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw Error("parse error: invalid number '" + std::string(text) + "'");
  return value;
}

namespace {

std::string strip_spaces(std::string_view text) {
  std::string out;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  return out;
}

}  // namespace

std::pair<std::string, std::string> split_complex_literal(std::string_view text) {
  const std::string s = strip_spaces(text);
  if (s.empty()) throw Error("parse error: empty complex literal");
  if (s.back() != 'i' && s.back() != 'j') return {s, "0"};

  // Find the sign that separates real and imaginary parts: the last +/- not
  // at position 0 and not directly after an exponent marker.
  std::string body = s.substr(0, s.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  std::string re = "0";
  std::string im = body;
  if (split != std::string::npos) {
    re = body.substr(0, split);
    im = body.substr(split);
  }
  if (im.empty() || im == "+") im = "1";
  if (im == "-") im = "-1";
  return {re, im};
}

Complex parse_complex(std::string_view text) {
  auto [re, im] = split_complex_literal(text);
  try {
    return {parse_double(re), parse_double(im)};
  } catch (const Error&) {
    throw Error("parse error: invalid complex literal '" + std::string(text) + "'");
  }
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    std::string item = strip_spaces(text.substr(start, comma - start));
    if (!item.empty()) items.push_back(item);
    start = comma + 1;
  }
  return items;
}

std::vector<Complex> parse_complex_list(std::string_view text) {
  std::vector<Complex> out;
  for (const auto& item : split_list(text)) out.push_back(parse_complex(item));
  return out;
}

std::string PrecisionMode::to_string() const {
  if (!is_extended()) return "double";
  return "extended(" + std::to_string(digits) + ")";
}

PrecisionMode PrecisionMode::parse(const std::string& text) {
  if (text == "double") return double_precision();
  const std::string prefix = "extended(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string num = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    unsigned digits = 0;
    auto res = std::from_chars(num.data(), num.data() + num.size(), digits);
    if (res.ec == std::errc() && res.ptr == num.data() + num.size() && digits >= 16)
      return extended(digits);
  }
  if (text == "extended") return extended(50);
  throw Error("parse error: unknown precision mode '" + text + "'");
}

}  // namespace powersum
