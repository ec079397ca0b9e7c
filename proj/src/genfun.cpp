// SPDX-License-Identifier: Apache-2.0
#include "powersum/genfun.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "powersum/format.hpp"
#include "powersum/roottest.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

constexpr double kTailTermStop = 1e-17;
constexpr std::uint64_t kMaxTailTerms = 100'000'000;

Complex closed_term(Complex z, Complex w) {
  const Complex zw = z * w;
  const Complex denom = 1.0 - zw;
  if (std::abs(denom) < kPoleGuard) throw Error("pole proximity: |1 - z_n w| < 1e-12");
  return zw / denom;
}

}  // namespace

Complex eval_closed(const SequenceSpec& seq, Complex w) {
  const double aw = std::abs(w);
  if (!(aw < 1.0)) throw Error("outside disk: |w| < 1 required");
  CompensatedComplexSum acc;
  for (const Complex& z : seq.head()) acc.add(closed_term(z, w));
  if (seq.has_tail() && aw > 0.0) {
    const auto& t = seq.geometric_tail();
    Complex z = t.coeff * int_pow(t.ratio, t.start);
    for (std::uint64_t n = 0;; ++n) {
      if (std::abs(z * w) / (1.0 - aw) < kTailTermStop) break;
      if (n >= kMaxTailTerms) throw Error("tail summation did not converge");
      acc.add(closed_term(z, w));
      z *= t.ratio;
    }
  }
  return acc.value();
}

SeriesEvaluation eval_series(const MomentTable& table, const SequenceStats& stats, Complex w) {
  const double m = stats.max_modulus;
  const double mw = m * std::abs(w);
  if (!(mw < 1.0)) throw Error("series divergent bound: max_modulus * |w| < 1 required");
  if (table.p_max < table.q) throw Error("invariant violated: p_max >= q required for the tail bound");

  SeriesEvaluation out;
  out.truncation_p = table.p_max;
  // Stored moments are of z / scale, so M_p w^p = stored_p (scale w)^p.
  const Complex u = table.normalization_scale * w;
  CompensatedComplexSum acc;
  for (const auto& e : table.entries) acc.add(e.value * int_pow(u, e.p));
  out.value = acc.value();
  if (mw == 0.0) {
    out.tail_bound = 0.0;
  } else {
    const double s_over_mq = stats.lq_norm_qth_power / int_pow(m, table.q);
    out.tail_bound = s_over_mq * int_pow(mw, table.p_max + 1) / (1.0 - mw);
  }
  return out;
}

SeriesEvaluation eval_series(const MomentTable& table, Complex w) {
  SequenceStats stats;
  stats.max_modulus = table.normalization_scale;
  stats.lq_norm_qth_power = table.lq_norm_qth_power * int_pow(table.normalization_scale, table.q);
  return eval_series(table, stats, w);
}

PoleProbe pole_probe(const SequenceSpec& seq, std::uint64_t n, const std::vector<double>& t_grid) {
  const Complex z = seq.element(n);
  if (std::abs(std::abs(z) - 1.0) > 1e-12)
    throw Error("probe requires unit-modulus element: |z_n| = 1");
  PoleProbe probe;
  for (double t : t_grid) {
    if (!(t >= 0.0 && t < 1.0)) throw Error("invariant violated: probe points must lie in [0, 1)");
    probe.points.emplace_back(t, std::abs(eval_closed(seq, t / z)));
  }
  std::size_t from = probe.points.size();
  while (from > 0) {
    if (from < probe.points.size() && !(probe.points[from - 1].second < probe.points[from].second)) break;
    --from;
  }
  probe.monotone_from = from;
  return probe;
}

std::vector<double> default_probe_grid() {
  std::vector<double> grid;
  for (int j = 1; j <= 12; ++j) grid.push_back(1.0 - std::ldexp(1.0, -j));
  return grid;
}

double radius_estimate(const MomentTable& table) {
  const double sup = limsup_estimate(table).tail_window_sup;
  if (sup == 0.0) throw Error("no singularity detected: all moments in the window are zero");
  return 1.0 / sup;
}

std::vector<Complex> default_disk_grid() {
  std::vector<Complex> grid;
  for (double r : {0.1, 0.3, 0.5, 0.7})
    for (int k = 0; k < 16; ++k) grid.push_back(std::polar(r, 2.0 * std::numbers::pi * k / 16.0));
  return grid;
}

std::vector<AgreementRow> agreement_table(const SequenceSpec& seq, const MomentTable& table,
                                          const std::vector<Complex>& points) {
  const SequenceStats stats = lq_stats(seq, seq.q());
  std::vector<AgreementRow> rows(points.size());
  const auto n = static_cast<long long>(points.size());
  std::exception_ptr failure;
  long long failed_at = n;
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i) {
    try {
      AgreementRow& row = rows[i];
      row.w = points[i];
      row.closed = eval_closed(seq, row.w);
      row.series = eval_series(table, stats, row.w);
      row.abs_diff = std::abs(row.closed - row.series.value);
    } catch (...) {
#pragma omp critical
      if (i < failed_at) {
        failed_at = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::string write_agreement_csv(const std::vector<AgreementRow>& rows) {
  std::ostringstream out;
  out << "re_w,im_w,closed_re,closed_im,series_re,series_im,tail_bound,abs_diff\n";
  for (const auto& r : rows) {
    out << format_double(r.w.real()) << ',' << format_double(r.w.imag()) << ','
        << format_double(r.closed.real()) << ',' << format_double(r.closed.imag()) << ','
        << format_double(r.series.value.real()) << ',' << format_double(r.series.value.imag()) << ','
        << format_double(r.series.tail_bound) << ',' << format_double(r.abs_diff) << '\n';
  }
  return out.str();
}

}  // namespace powersum
