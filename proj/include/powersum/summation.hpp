// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "powersum/types.hpp"

namespace powersum {

/// Error-free transformation: a + b == sum + err exactly.
inline void two_sum(double a, double b, double& sum, double& err) {
  sum = a + b;
  const double bv = sum - a;
  err = (a - (sum - bv)) + (b - bv);
}

/// Compensated accumulator (cascaded TwoSum). The result is as accurate as if
/// the sum were computed in twice the working precision and then rounded.
class CompensatedSum {
 public:
  void add(double x) {
    double err;
    two_sum(sum_, x, sum_, err);
    comp_ += err;
  }
  CompensatedSum& operator+=(double x) {
    add(x);
    return *this;
  }
  void merge(const CompensatedSum& other) {
    add(other.sum_);
    comp_ += other.comp_;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(Complex z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  CompensatedComplexSum& operator+=(Complex z) {
    add(z);
    return *this;
  }
  void merge(const CompensatedComplexSum& other) {
    re_.merge(other.re_);
    im_.merge(other.im_);
  }
  Complex value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Index-ascending compensated sums.
double compensated_sum(std::span<const double> xs);
Complex compensated_sum(std::span<const Complex> zs);

/// z^p by binary exponentiation (O(log p) multiplications). p >= 0; z^0 = 1.
template <typename T>
T int_pow(T z, unsigned long long p) {
  T result(1);
  while (p > 0) {
    if (p & 1ULL) result *= z;
    p >>= 1;
    if (p > 0) z *= z;
  }
  return result;
}

}  // namespace powersum
