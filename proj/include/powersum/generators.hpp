// SPDX-License-Identifier: Apache-2.0
#pragma once

// Seeded fixture generators shared by the CLI, the tests and the benchmark.

#include <cstdint>
#include <vector>

#include "powersum/polymoment.hpp"
#include "powersum/sequence.hpp"

namespace powersum {

/// count elements (count == 0: uniform in [3, 8]) with moduli uniform in
/// [0.3, 0.95] and uniform arguments.
SequenceSpec finite_random(std::uint64_t seed, unsigned count = 0);

/// The m-th roots of unity e^{2 pi i k / m}; quarter turns are exact.
SequenceSpec roots_of_unity(unsigned m);

/// z_n = coeff ratio^n for n >= 0; coeff defaults to ratio (z_n = ratio^{n+1}).
SequenceSpec geometric(Complex ratio);
SequenceSpec geometric(Complex ratio, Complex coeff, std::uint64_t start = 0);

/// k distinct nodes with moduli in [0.3, 0.95] and pairwise distance >= separation.
std::vector<Complex> separated_nodes(std::uint64_t seed, unsigned k, double separation = 0.1);

/// Degree uniform in [0, max_degree] with real and imaginary parts of each
/// coefficient uniform in [-1, 1]; never the zero polynomial.
UnitIntervalPolynomial random_polynomial(std::uint64_t seed, unsigned max_degree = 5);

}  // namespace powersum
