// SPDX-License-Identifier: Apache-2.0
#pragma once

// Root-test estimate of limsup |M_p|^{1/p}, compared against the maximum
// modulus of the sequence.

#include <string>
#include <vector>

#include <json.hpp>

#include "powersum/moments.hpp"
#include "powersum/sequence.hpp"

namespace powersum {

struct RootSample {
  unsigned p = 0;
  double raw = 0.0;     // scale * |stored M_p|^{1/p}
  double capped = 0.0;  // raw capped at scale * min(1, bound^{1/p})
};

struct LimsupEstimate {
  double running_sup = 0.0;      // sup over all p
  double tail_window_sup = 0.0;  // sup over p in (p_max/2, p_max]
};

struct RootTestReport {
  unsigned p_max = 0;
  std::vector<RootSample> roots;
  double running_sup = 0.0;
  double tail_window_sup = 0.0;
  double raw_tail_window_sup = 0.0;
  double max_modulus = 0.0;
  double gap = 0.0;  // max_modulus - tail_window_sup
  unsigned zero_moment_count = 0;
  double tol = 0.0;
  bool pass = false;

  // Reduction route: roots |M_k(v)|^{1/(qk)} with v = z^q, p = q k.
  unsigned q = 1;
  double reduction_window_sup = 0.0;
  double reduction_max_diff = 0.0;  // max_k |M_k(v) - M_{qk}(z)| / m^{qk}
};

/// Raw roots, one per table entry; |0|^{1/p} = 0.
std::vector<double> root_sequence(const MomentTable& table);
std::vector<RootSample> root_samples(const MomentTable& table);

/// Dyadic tail-window estimator over the capped roots. Needs p_max >= 8.
LimsupEstimate limsup_estimate(const MomentTable& table);
LimsupEstimate limsup_estimate(const std::vector<double>& roots);

RootTestReport verify_theorem(const SequenceSpec& seq, unsigned p_max, double tol,
                              PrecisionMode mode = PrecisionMode::double_precision());

/// Report for a table alone (e.g. read from CSV); the normalization scale
/// stands in for the max modulus and the reduction route is skipped.
RootTestReport verify_table(const MomentTable& table, double tol);

nlohmann::json to_json(const RootTestReport& report);
std::string write_roots_csv(const RootTestReport& report);

}  // namespace powersum
