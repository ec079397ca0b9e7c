// SPDX-License-Identifier: Apache-2.0
#include "powersum/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace powersum {

namespace {

// Maps 53 random bits to [0, 1); avoids std::uniform_real_distribution,
// whose output is implementation-defined.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Complex random_point(std::mt19937_64& rng) {
  const double r = 0.3 + 0.65 * unit(rng);
  const double theta = 2.0 * std::numbers::pi * unit(rng);
  return std::polar(r, theta);
}

}  // namespace

SequenceSpec finite_random(std::uint64_t seed, unsigned count) {
  std::mt19937_64 rng(seed);
  if (count == 0) count = 3 + static_cast<unsigned>(rng() % 6);
  std::vector<Complex> values;
  for (unsigned i = 0; i < count; ++i) values.push_back(random_point(rng));
  return SequenceSpec::finite(std::move(values));
}

SequenceSpec roots_of_unity(unsigned m) {
  if (m == 0) throw Error("invariant violated: order >= 1 required");
  static const Complex quarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::vector<Complex> values;
  for (unsigned k = 0; k < m; ++k) {
    if ((4 * k) % m == 0)
      values.push_back(quarter[(4 * k) / m]);
    else
      values.push_back(std::polar(1.0, 2.0 * std::numbers::pi * k / m));
  }
  return SequenceSpec::finite(std::move(values));
}

SequenceSpec geometric(Complex ratio) { return geometric(ratio, ratio, 0); }

SequenceSpec geometric(Complex ratio, Complex coeff, std::uint64_t start) {
  return SequenceSpec::tail({}, coeff, ratio, start);
}

std::vector<Complex> separated_nodes(std::uint64_t seed, unsigned k, double separation) {
  std::mt19937_64 rng(seed);
  std::vector<Complex> nodes;
  int attempts = 0;
  while (nodes.size() < k) {
    if (++attempts > 100000) throw Error("could not place separated nodes");
    const Complex z = random_point(rng);
    bool ok = true;
    for (const auto& other : nodes) ok = ok && std::abs(z - other) >= separation;
    if (ok) nodes.push_back(z);
  }
  return nodes;
}

UnitIntervalPolynomial random_polynomial(std::uint64_t seed, unsigned max_degree) {
  std::mt19937_64 rng(seed);
  const unsigned degree = static_cast<unsigned>(rng() % (max_degree + 1));
  std::vector<Complex> coeffs;
  for (unsigned i = 0; i <= degree; ++i) coeffs.emplace_back(2.0 * unit(rng) - 1.0, 2.0 * unit(rng) - 1.0);
  if (coeffs.back() == Complex(0.0)) coeffs.back() = 1.0;
  return UnitIntervalPolynomial::from_complex(coeffs);
}

}  // namespace powersum
