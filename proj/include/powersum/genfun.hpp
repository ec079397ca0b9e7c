// SPDX-License-Identifier: Apache-2.0
#pragma once

// The generating function f(w) = sum_n z_n w / (1 - z_n w) = sum_p M_p w^p,
// evaluated through both expressions on the open unit disk.

#include <string>
#include <vector>

#include "powersum/moments.hpp"
#include "powersum/sequence.hpp"

namespace powersum {

inline constexpr double kPoleGuard = 1e-12;

/// Closed form. Throws "outside disk" for |w| >= 1 and "pole proximity" when
/// some |1 - z_n w| < kPoleGuard.
Complex eval_closed(const SequenceSpec& seq, Complex w);

struct SeriesEvaluation {
  Complex value;
  unsigned truncation_p = 0;
  double tail_bound = 0.0;  // certified bound on |sum_{p > P} M_p w^p|
};

/// Truncated power series sum_{p<=P} M_p w^p with the a-priori tail bound
/// S m^{-q} (m|w|)^{P+1} / (1 - m|w|). Requires m|w| < 1 and P >= q.
SeriesEvaluation eval_series(const MomentTable& table, const SequenceStats& stats, Complex w);
/// Uses the table's own normalization metadata for m, q and S.
SeriesEvaluation eval_series(const MomentTable& table, Complex w);

struct PoleProbe {
  std::vector<std::pair<double, double>> points;  // (t, |f(t / z_n)|)
  std::size_t monotone_from = 0;  // |f| strictly increases from this index on
};

/// |f| along the ray towards the singularity 1/z_n. Requires |z_n| = 1.
PoleProbe pole_probe(const SequenceSpec& seq, std::uint64_t n, const std::vector<double>& t_grid);
/// {1 - 2^{-j} : j = 1..12}
std::vector<double> default_probe_grid();

/// Cauchy-Hadamard: 1 / (tail-window sup of the capped roots).
double radius_estimate(const MomentTable& table);

struct AgreementRow {
  Complex w;
  Complex closed;
  SeriesEvaluation series;
  double abs_diff = 0.0;
};

/// r e^{2 pi i k / 16} for r in {0.1, 0.3, 0.5, 0.7}, k = 0..15.
std::vector<Complex> default_disk_grid();

/// Evaluates both forms at each point (OpenMP over points; deterministic).
std::vector<AgreementRow> agreement_table(const SequenceSpec& seq, const MomentTable& table,
                                          const std::vector<Complex>& points);

std::string write_agreement_csv(const std::vector<AgreementRow>& rows);

}  // namespace powersum
