// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "powersum/types.hpp"

namespace powersum {

/// Roots of the monic polynomial c_0 + c_1 x + ... + c_{k-1} x^{k-1} + x^k
/// (ascending coefficients, last entry 1) as eigenvalues of the companion
/// matrix.
std::vector<Complex> companion_roots(const std::vector<Complex>& monic);

}  // namespace powersum
