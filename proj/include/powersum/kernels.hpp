// SPDX-License-Identifier: Apache-2.0
#pragma once

// Data-parallel inner loops. Every kernel has a serial reference in
// `kernels::serial` and an OpenMP version in `kernels::omp`; the two produce
// bit-identical output for any thread count because each output element is
// computed by one thread in a fixed order.

#include <algorithm>
#include <optional>
#include <span>
#include <vector>

#include "powersum/extended.hpp"
#include "powersum/summation.hpp"
#include "powersum/types.hpp"

namespace powersum::kernels {

namespace detail {

inline Complex power_sum_at(std::span<const Complex> z, unsigned p) {
  CompensatedComplexSum acc;
  for (const Complex& v : z) acc.add(int_pow(v, p));
  return acc.value();
}

inline ExtComplex power_sum_at(std::span<const ExtComplex> z, unsigned p) {
  ExtComplex acc;
  for (const ExtComplex& v : z) acc += int_pow(v, p);
  return acc;
}

template <typename T>
T convolve_at(std::span<const T> a, std::span<const T> b, std::size_t k) {
  const std::size_t lo = k + 1 > b.size() ? k + 1 - b.size() : 0;
  const std::size_t hi = std::min(k, a.size() - 1);
  T acc{};
  for (std::size_t i = lo; i <= hi; ++i) acc += a[i] * b[k - i];
  return acc;
}

}  // namespace detail

namespace serial {

/// out[p-1] = sum_n z_n^p for p = 1..out.size(), compensated, index ascending.
inline void power_sums(std::span<const Complex> z, std::span<Complex> out) {
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = detail::power_sum_at(z, static_cast<unsigned>(i + 1));
}

/// Extended-precision variant; values are rounded to double only at the end.
inline void power_sums(std::span<const Complex> z, unsigned digits, std::span<ExtComplex> out) {
  PrecisionScope scope(digits);
  std::vector<ExtComplex> ext;
  ext.reserve(z.size());
  for (const auto& v : z) ext.push_back(to_ext(v));
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = detail::power_sum_at(std::span<const ExtComplex>(ext), static_cast<unsigned>(i + 1));
}

/// Schoolbook product of coefficient vectors (ascending degree).
template <typename T>
std::vector<T> convolve(std::span<const T> a, std::span<const T> b) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = detail::convolve_at(a, b, k);
  return out;
}

}  // namespace serial

namespace omp {

inline void power_sums(std::span<const Complex> z, std::span<Complex> out) {
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i)
    out[i] = detail::power_sum_at(z, static_cast<unsigned>(i + 1));
}

inline void power_sums(std::span<const Complex> z, unsigned digits, std::span<ExtComplex> out) {
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel
  {
    PrecisionScope scope(digits);
    std::vector<ExtComplex> ext;
    ext.reserve(z.size());
    for (const auto& v : z) ext.push_back(to_ext(v));
#pragma omp for schedule(static)
    for (long long i = 0; i < n; ++i)
      out[i] = detail::power_sum_at(std::span<const ExtComplex>(ext), static_cast<unsigned>(i + 1));
  }
}

/// `digits` > 0 sets the MPFR precision in every worker (ExtComplex only).
template <typename T>
std::vector<T> convolve(std::span<const T> a, std::span<const T> b, unsigned digits = 0) {
  if (a.empty() || b.empty()) return {};
  std::vector<T> out(a.size() + b.size() - 1);
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel if (n > 64)
  {
    std::optional<PrecisionScope> scope;
    if (digits > 0) scope.emplace(digits);
#pragma omp for schedule(dynamic, 16)
    for (long long k = 0; k < n; ++k) out[k] = detail::convolve_at(a, b, static_cast<std::size_t>(k));
  }
  return out;
}

}  // namespace omp

/// Operands of degree above this use Karatsuba splitting.
inline constexpr std::size_t kSchoolbookMaxDegree = 512;

/// Karatsuba product; falls back to the OpenMP schoolbook kernel once either
/// operand has degree <= kSchoolbookMaxDegree. Exact over any ring.
template <typename T>
std::vector<T> karatsuba(std::span<const T> a, std::span<const T> b, unsigned digits = 0) {
  if (a.empty() || b.empty()) return {};
  if (a.size() - 1 <= kSchoolbookMaxDegree || b.size() - 1 <= kSchoolbookMaxDegree)
    return omp::convolve(a, b, digits);
  const std::size_t half = std::min(a.size(), b.size()) / 2;
  auto a0 = a.first(half), a1 = a.subspan(half);
  auto b0 = b.first(half), b1 = b.subspan(half);

  auto add = [](std::span<const T> x, std::span<const T> y) {
    std::vector<T> s(std::max(x.size(), y.size()));
    for (std::size_t i = 0; i < x.size(); ++i) s[i] += x[i];
    for (std::size_t i = 0; i < y.size(); ++i) s[i] += y[i];
    return s;
  };
  std::vector<T> low = karatsuba(a0, b0, digits);
  std::vector<T> high = karatsuba(a1, b1, digits);
  const std::vector<T> sa = add(a0, a1);
  const std::vector<T> sb = add(b0, b1);
  std::vector<T> mid = karatsuba(std::span<const T>(sa), std::span<const T>(sb), digits);
  for (std::size_t i = 0; i < low.size(); ++i) mid[i] -= low[i];
  for (std::size_t i = 0; i < high.size(); ++i) mid[i] -= high[i];

  std::vector<T> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < low.size(); ++i) out[i] += low[i];
  for (std::size_t i = 0; i < mid.size() && i + half < out.size(); ++i) out[i + half] += mid[i];
  for (std::size_t i = 0; i < high.size(); ++i) out[i + 2 * half] += high[i];
  return out;
}

template <typename T>
std::vector<T> multiply(std::span<const T> a, std::span<const T> b, unsigned digits = 0) {
  return karatsuba(a, b, digits);
}

}  // namespace powersum::kernels
