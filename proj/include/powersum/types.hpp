// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace powersum {

using Complex = std::complex<double>;

/// Raised for violated preconditions and degenerate inputs. The message names
/// the violated condition and is meant to be shown as a one-line diagnostic.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a double-precision computation refuses to return a result
/// because of ill-conditioning; callers may retry in extended precision.
class EscalatePrecision : public Error {
 public:
  using Error::Error;
};

struct PrecisionMode {
  enum class Kind { Double, Extended };
  Kind kind = Kind::Double;
  unsigned digits = 0;  // decimal digits, extended only

  static PrecisionMode double_precision() { return {}; }
  static PrecisionMode extended(unsigned digits) {
    return {Kind::Extended, digits};
  }
  bool is_extended() const { return kind == Kind::Extended; }

  // "double" or "extended(60)"
  std::string to_string() const;
  static PrecisionMode parse(const std::string& text);

  friend bool operator==(const PrecisionMode&, const PrecisionMode&) = default;
};

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace powersum
