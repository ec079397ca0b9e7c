// SPDX-License-Identifier: Apache-2.0
#include "powersum/summation.hpp"

namespace powersum {

double compensated_sum(std::span<const double> xs) {
  CompensatedSum acc;
  for (double x : xs) acc.add(x);
  return acc.value();
}

Complex compensated_sum(std::span<const Complex> zs) {
  CompensatedComplexSum acc;
  for (const Complex& z : zs) acc.add(z);
  return acc.value();
}

}  // namespace powersum
