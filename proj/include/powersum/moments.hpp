// SPDX-License-Identifier: Apache-2.0
#pragma once

// Power-sum moments M_p = sum_n z_n^p of a sequence.

#include <string>
#include <vector>

#include "powersum/sequence.hpp"
#include "powersum/types.hpp"

namespace powersum {

/// M_p. Finite part: compensated, index-ascending sum of z_n^p computed by
/// binary exponentiation. Tail part: coeff^p ratio^{Np} / (1 - ratio^p),
/// re-evaluated in extended precision when |1 - ratio^p| < 1e-14.
Complex moment(const SequenceSpec& seq, unsigned p,
               PrecisionMode mode = PrecisionMode::double_precision());

/// m^{p-q} * sum|z_n|^q, an upper bound for |M_p| whenever p >= q.
double apriori_bound(const SequenceStats& stats, unsigned p, unsigned q);

struct MomentEntry {
  unsigned p = 0;
  Complex value;      // M_p of the normalized sequence
  double abs = 0.0;   // |value|
  double bound = 0.0; // a-priori bound on abs
};

/// Moments of normalize(seq). The moments of the original sequence are
/// scale^p * value.
struct MomentTable {
  unsigned p_max = 0;
  std::vector<MomentEntry> entries;  // p = 1..p_max
  PrecisionMode precision;
  double normalization_scale = 1.0;
  unsigned q = 1;              // declared exponent of the source sequence
  double lq_norm_qth_power = 0.0;  // sum |z_n / scale|^q

  /// M_p of the un-normalized sequence.
  Complex raw_moment(unsigned p) const;
};

/// Parallel over p through the OpenMP kernel; output is independent of the
/// thread count.
MomentTable moment_table(const SequenceSpec& seq, unsigned p_max,
                         PrecisionMode mode = PrecisionMode::double_precision());

/// Same table built with the serial reference kernel.
MomentTable moment_table_serial(const SequenceSpec& seq, unsigned p_max,
                                PrecisionMode mode = PrecisionMode::double_precision());

/// CSV: a `#` comment line carrying scale, precision, q and the lq sum, then
/// `p,re,im,abs,bound` and one row per p.
std::string write_moment_csv(const MomentTable& table);
MomentTable read_moment_csv(const std::string& text);

}  // namespace powersum
