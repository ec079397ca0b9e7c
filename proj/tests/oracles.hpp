// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library's numerical routines: plain long double loops, repeated
// multiplication instead of binary exponentiation, cpp_int instead of GMP.

#include <cmath>
#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using LComplex = std::complex<long double>;

inline LComplex power(LComplex z, unsigned p) {
  LComplex r(1.0L);
  for (unsigned i = 0; i < p; ++i) r *= z;
  return r;
}

/// sum_n z_n^p by direct summation.
inline LComplex brute_moment(const std::vector<std::complex<double>>& z, unsigned p) {
  LComplex s(0.0L);
  for (const auto& v : z) s += power(LComplex(v.real(), v.imag()), p);
  return s;
}

/// First `terms` elements of coeff * ratio^n, n >= start.
inline std::vector<std::complex<double>> geometric_terms(std::complex<double> coeff, std::complex<double> ratio,
                                                         unsigned start, unsigned terms) {
  std::vector<std::complex<double>> out;
  LComplex z = LComplex(coeff.real(), coeff.imag()) * power(LComplex(ratio.real(), ratio.imag()), start);
  for (unsigned i = 0; i < terms; ++i) {
    out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    z *= LComplex(ratio.real(), ratio.imag());
  }
  return out;
}

inline boost::multiprecision::cpp_int factorial(unsigned n) {
  boost::multiprecision::cpp_int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

/// Gauss-Legendre nodes and weights on [0, 1].
inline void gauss_legendre(unsigned n, std::vector<long double>& x, std::vector<long double>& w) {
  x.assign(n, 0.0L);
  w.assign(n, 0.0L);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (unsigned i = 0; i < n; ++i) {
    long double t = std::cos(pi * (i + 0.75L) / (n + 0.5L));
    long double dp = 0.0L;
    for (int it = 0; it < 100; ++it) {
      long double p0 = 1.0L, p1 = t;
      for (unsigned k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * t * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0L);
      const long double dt = p1 / dp;
      t -= dt;
      if (std::fabs(dt) < 1e-19L) break;
    }
    x[i] = (1.0L - t) / 2.0L;
    w[i] = 1.0L / ((1.0L - t * t) * dp * dp);
  }
}

/// int_0^1 f(x)^p dx by Gauss-Legendre quadrature, exact up to rounding for
/// polynomial integrands of degree < 2n.
inline LComplex quadrature_moment(const std::vector<std::complex<double>>& coeffs, unsigned p) {
  const unsigned degree = static_cast<unsigned>(coeffs.size() - 1) * p;
  const unsigned n = degree / 2 + 2;
  std::vector<long double> x, w;
  gauss_legendre(n, x, w);
  LComplex s(0.0L);
  for (unsigned i = 0; i < n; ++i) {
    LComplex f(0.0L);
    for (std::size_t k = coeffs.size(); k-- > 0;) f = f * x[i] + LComplex(coeffs[k].real(), coeffs[k].imag());
    s += w[i] * power(f, p);
  }
  return s;
}

}  // namespace oracle
