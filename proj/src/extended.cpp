// SPDX-License-Identifier: Apache-2.0
#include "powersum/extended.hpp"

#include <cctype>
#include <cmath>

#include <mpfr.h>

namespace powersum {

BigRational exact_rational(double x) {
  if (!std::isfinite(x)) throw Error("invariant violated: value must be finite");
  int exp = 0;
  const double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer for every finite double.
  const auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num(scaled);
  BigInt den(1);
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return BigRational(num, den);
}

BigRational parse_decimal_rational(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) text.push_back(c);
  auto fail = [&] { return Error("parse error: invalid decimal '" + raw + "'"); };
  if (text.empty()) throw fail();

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (digits.empty()) throw fail();
  long long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') throw fail();
    ++pos;
    std::size_t used = 0;
    try {
      exponent = std::stoll(text.substr(pos), &used);
    } catch (const std::exception&) {
      throw fail();
    }
    if (pos + used != text.size()) throw fail();
  }
  exponent -= frac_digits;
  if (exponent > 4000 || exponent < -4000) throw fail();

  // A leading zero would make the string constructor read octal.
  const auto first = digits.find_first_not_of('0');
  BigInt num(first == std::string::npos ? std::string("0") : digits.substr(first));
  BigInt pow10 = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::llabs(exponent)));
  if (negative) num = -num;
  if (exponent >= 0) return BigRational(num * pow10);
  return BigRational(num, pow10);
}

double to_double(const BigRational& q) {
  mpfr_t tmp;
  mpfr_init2(tmp, 53);
  mpfr_set_q(tmp, q.backend().data(), MPFR_RNDN);
  const double d = mpfr_get_d(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return d;
}

}  // namespace powersum
