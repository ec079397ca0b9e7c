// SPDX-License-Identifier: Apache-2.0
#pragma once

// Recovery of a finite sequence (its nonzero elements, with multiplicities)
// from the power sums M_1..M_{2k}, and the zero-moment certificate built on
// Newton's identities. Zero elements are invisible to every moment (0^p = 0)
// and can never be recovered.

#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "powersum/types.hpp"

namespace powersum {

/// H[i][j] = M_{i+j+1}, rhs[i] = -M_{k+i+1}, 0 <= i, j < k.
struct HankelSystem {
  unsigned k = 0;
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd rhs;
};

/// `moments[p-1]` is M_p. Needs at least 2k moments.
HankelSystem hankel_system(std::span<const Complex> moments, unsigned k);

/// Numerical rank of the K x K Hankel matrix, K = moments.size() / 2:
/// singular values at or below tol_rel * sigma_max count as zero.
unsigned rank_detect(std::span<const Complex> moments, double tol_rel);

struct Recovery {
  std::vector<Complex> nodes;     // distinct nonzero values
  std::vector<unsigned> weights;  // occurrence counts, same order as nodes
  double residual = 0.0;  // max_{p <= 2 max(k,1)} |sum_j w_j z_j^p - M_p|
  unsigned detected_order = 0;
  double condition = 0.0;  // Hankel condition estimate (sigma_max / sigma_min)
  /// Monic Prony polynomial, ascending: c_0 + c_1 x + ... + x^k.
  std::vector<Complex> prony_polynomial;
  PrecisionMode precision;
};

inline constexpr double kHankelConditionLimit = 1e12;
inline constexpr double kWeightRoundingTolerance = 0.1;

/// Prony in double precision. Throws EscalatePrecision ("escalate precision")
/// when the Hankel condition estimate exceeds kHankelConditionLimit and Error
/// ("inconsistent moment stream") when a weight is not within 0.1 of a
/// positive integer.
Recovery prony_recover(std::span<const Complex> moments, unsigned k);

/// Same pipeline with the Hankel solve, root polishing and weight solve
/// carried out in `digits`-digit arithmetic.
Recovery prony_recover_extended(std::span<const Complex> moments, unsigned k, unsigned digits);

struct RecoverOptions {
  std::optional<unsigned> order;  // detect from the Hankel rank when empty
  double tol_rel = 1e-9;
  unsigned max_hankel_size = 32;
  bool allow_escalation = true;
  unsigned extended_digits = 50;
};

/// Rank detection (unless an order is given), then Prony, escalating to
/// extended precision if the double solve refuses.
Recovery recover(std::span<const Complex> moments, const RecoverOptions& options = {});

/// Multiplies every node by `scale` (undoing table normalization) and
/// recomputes the residual against the un-normalized moments.
Recovery rescale(Recovery recovery, double scale, std::span<const Complex> raw_moments);

/// max_{p <= 2 max(k,1)} |sum_j w_j z_j^p - M_p| for the given nodes.
double recovery_residual(const Recovery& recovery, std::span<const Complex> moments);

/// e_1..e_k from p e_p = sum_{i=1}^{p} (-1)^{i-1} e_{p-i} M_i, e_0 = 1.
std::vector<Complex> newton_elementary(std::span<const Complex> moments, unsigned k);

struct ZeroMomentCertificate {
  bool pass = false;
  unsigned k = 0;
  double tol = 0.0;
  double max_moment = 0.0;
  double elementary_bound = 0.0;  // k tol (1 + max|M|)^k
  std::vector<Complex> elementary;
  double root_bound = 0.0;  // every node of the degree-k model lies in |z| <= root_bound
};

/// PASS iff max_{p<=k} |M_p| <= tol and every |e_p| <= k tol (1 + max|M|)^k.
/// Only meaningful when k is at least the number of nonzero elements.
ZeroMomentCertificate zero_moment_certificate(std::span<const Complex> moments, unsigned k, double tol);

/// Optimal one-to-one matching of two equal-size node sets minimizing the sum
/// of |a - b| (Hungarian method). Returns perm with a[i] <-> b[perm[i]].
std::vector<std::size_t> match_nodes(std::span<const Complex> a, std::span<const Complex> b);
/// max_i |a[i] - b[perm[i]]| under the optimal matching.
double matched_max_distance(std::span<const Complex> a, std::span<const Complex> b);

nlohmann::json to_json(const Recovery& recovery);
nlohmann::json to_json(const ZeroMomentCertificate& cert);

}  // namespace powersum
