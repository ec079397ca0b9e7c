// SPDX-License-Identifier: Apache-2.0
#include "powersum/companion.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace powersum {

std::vector<Complex> companion_roots(const std::vector<Complex>& monic) {
  if (monic.empty() || monic.back() != Complex(1.0))
    throw Error("invariant violated: companion_roots needs a monic polynomial");
  const auto k = static_cast<Eigen::Index>(monic.size() - 1);
  if (k == 0) return {};
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(k, k);
  for (Eigen::Index i = 1; i < k; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < k; ++i) c(i, k - 1) = -monic[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(c, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw Error("companion eigenvalue iteration did not converge");
  return {solver.eigenvalues().data(), solver.eigenvalues().data() + k};
}

}  // namespace powersum
