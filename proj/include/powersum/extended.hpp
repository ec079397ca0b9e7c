// SPDX-License-Identifier: Apache-2.0
#pragma once

// Extended-precision and exact scalar types shared by the moment, polynomial
// and recovery code.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "powersum/types.hpp"

namespace powersum {

using ExtReal = boost::multiprecision::mpfr_float;
using BigInt = boost::multiprecision::mpz_int;
using BigRational = boost::multiprecision::mpq_rational;

/// Minimal complex number over an arbitrary ordered field or ring. std::complex
/// is only specified for the built-in floating types.
template <typename T>
struct Cx {
  T re{0};
  T im{0};

  Cx() = default;
  Cx(T r) : re(std::move(r)), im(0) {}  // NOLINT: implicit from real
  Cx(T r, T i) : re(std::move(r)), im(std::move(i)) {}
  Cx(int r) : re(r), im(0) {}  // NOLINT

  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator-=(const Cx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cx& operator*=(const Cx& o) {
    T r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  friend Cx operator+(Cx a, const Cx& b) { return a += b; }
  friend Cx operator-(Cx a, const Cx& b) { return a -= b; }
  friend Cx operator*(Cx a, const Cx& b) { return a *= b; }
  friend Cx operator-(const Cx& a) { return Cx(-a.re, -a.im); }
  friend bool operator==(const Cx& a, const Cx& b) {
    return a.re == b.re && a.im == b.im;
  }

  T norm() const { return re * re + im * im; }
  Cx conj() const { return Cx(re, -im); }
};

using ExtComplex = Cx<ExtReal>;
using GaussInt = Cx<BigInt>;
using ExactComplex = Cx<BigRational>;

inline ExtReal abs(const ExtComplex& z) { return boost::multiprecision::hypot(z.re, z.im); }

inline ExtComplex div(const ExtComplex& a, const ExtComplex& b) {
  ExtReal d = b.norm();
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

/// Sets the thread's default MPFR precision for the lifetime of the scope.
/// Boost keeps the default precision thread_local, so every OpenMP worker that
/// touches ExtReal must open its own scope.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10)
      : saved_(ExtReal::default_precision()) {
    ExtReal::default_precision(digits10);
  }
  ~PrecisionScope() { ExtReal::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

inline ExtComplex to_ext(Complex z) { return {ExtReal(z.real()), ExtReal(z.imag())}; }
inline Complex to_double(const ExtComplex& z) {
  return {z.re.convert_to<double>(), z.im.convert_to<double>()};
}

/// Exact rational value of a finite double.
BigRational exact_rational(double x);

/// Exact rational value of a decimal literal such as "-1.25e-3".
BigRational parse_decimal_rational(const std::string& text);

/// Round-to-nearest double of an exact rational.
double to_double(const BigRational& q);

}  // namespace powersum
