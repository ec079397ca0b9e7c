// SPDX-License-Identifier: Apache-2.0
#include "powersum/roottest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "powersum/format.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

constexpr unsigned kMinWindowPmax = 8;

double unit_root(double abs, unsigned p) {
  if (abs == 0.0) return 0.0;
  return std::pow(abs, 1.0 / static_cast<double>(p));
}

}  // namespace

std::vector<RootSample> root_samples(const MomentTable& table) {
  std::vector<RootSample> out;
  out.reserve(table.entries.size());
  const double scale = table.normalization_scale;
  for (const auto& e : table.entries) {
    const double r = unit_root(e.abs, e.p);
    const double cap = std::min(1.0, unit_root(e.bound, e.p));
    out.push_back({e.p, scale * r, scale * std::min(r, cap)});
  }
  return out;
}

std::vector<double> root_sequence(const MomentTable& table) {
  std::vector<double> out;
  for (const auto& s : root_samples(table)) out.push_back(s.raw);
  return out;
}

LimsupEstimate limsup_estimate(const std::vector<double>& roots) {
  const auto p_max = static_cast<unsigned>(roots.size());
  if (p_max < kMinWindowPmax) throw Error("window undefined: p_max >= 8 required");
  LimsupEstimate est;
  for (unsigned p = 1; p <= p_max; ++p) {
    est.running_sup = std::max(est.running_sup, roots[p - 1]);
    if (p > p_max / 2) est.tail_window_sup = std::max(est.tail_window_sup, roots[p - 1]);
  }
  return est;
}

LimsupEstimate limsup_estimate(const MomentTable& table) {
  std::vector<double> capped;
  for (const auto& s : root_samples(table)) capped.push_back(s.capped);
  return limsup_estimate(capped);
}

namespace {

void fill_from_table(RootTestReport& report, const MomentTable& table) {
  report.p_max = table.p_max;
  report.roots = root_samples(table);
  const LimsupEstimate est = limsup_estimate(table);
  report.running_sup = est.running_sup;
  report.tail_window_sup = est.tail_window_sup;
  std::vector<double> raw;
  for (const auto& s : report.roots) raw.push_back(s.raw);
  report.raw_tail_window_sup = limsup_estimate(raw).tail_window_sup;
  report.zero_moment_count = static_cast<unsigned>(std::count_if(
      table.entries.begin(), table.entries.end(), [](const MomentEntry& e) { return e.abs == 0.0; }));
}

void finish(RootTestReport& report, double tol) {
  if (!(tol > 0.0)) throw Error("invariant violated: tol > 0 required");
  report.tol = tol;
  report.gap = report.max_modulus - report.tail_window_sup;
  report.pass = std::abs(report.gap) <= tol;
}

}  // namespace

RootTestReport verify_theorem(const SequenceSpec& seq, unsigned p_max, double tol, PrecisionMode mode) {
  if (!(tol > 0.0)) throw Error("invariant violated: tol > 0 required");
  RootTestReport report;
  const MomentTable table = moment_table(seq, p_max, mode);
  fill_from_table(report, table);
  report.max_modulus = max_modulus(seq);
  report.q = seq.q();
  report.reduction_window_sup = report.tail_window_sup;

  const unsigned q = seq.q();
  const unsigned k_max = p_max / q;
  if (q > 1 && k_max >= kMinWindowPmax) {
    const MomentTable reduced = moment_table(power_map(seq, q), k_max, mode);
    // Roots along the subsequence p = q k.
    std::vector<double> sub;
    const double m = table.normalization_scale;
    const double ratio = reduced.normalization_scale / int_pow(m, q);
    double diff = 0.0;
    for (unsigned k = 1; k <= k_max; ++k) {
      const MomentEntry& e = reduced.entries[k - 1];
      const double cap = std::min(1.0, std::pow(e.bound, 1.0 / k));
      const double r = std::min(e.abs == 0.0 ? 0.0 : std::pow(e.abs, 1.0 / k), cap);
      sub.push_back(std::pow(reduced.normalization_scale * r, 1.0 / q));
      const Complex lhs = int_pow(ratio, k) * e.value;
      diff = std::max(diff, std::abs(lhs - table.entries[q * k - 1].value));
    }
    report.reduction_window_sup = limsup_estimate(sub).tail_window_sup;
    report.reduction_max_diff = diff;
  }
  finish(report, tol);
  return report;
}

RootTestReport verify_table(const MomentTable& table, double tol) {
  RootTestReport report;
  fill_from_table(report, table);
  report.max_modulus = table.normalization_scale;
  report.q = table.q;
  report.reduction_window_sup = report.tail_window_sup;
  finish(report, tol);
  return report;
}

nlohmann::json to_json(const RootTestReport& r) {
  nlohmann::json j;
  j["p_max"] = r.p_max;
  j["max_modulus"] = r.max_modulus;
  j["running_sup"] = r.running_sup;
  j["tail_window_sup"] = r.tail_window_sup;
  j["raw_tail_window_sup"] = r.raw_tail_window_sup;
  j["gap"] = r.gap;
  j["tol"] = r.tol;
  j["verdict"] = r.pass ? "PASS" : "FAIL";
  j["zero_moment_count"] = r.zero_moment_count;
  j["q"] = r.q;
  j["reduction_window_sup"] = r.reduction_window_sup;
  j["reduction_max_diff"] = r.reduction_max_diff;
  return j;
}

std::string write_roots_csv(const RootTestReport& report) {
  std::ostringstream out;
  out << "p,root_raw,root_capped\n";
  for (const auto& s : report.roots)
    out << s.p << ',' << format_double(s.raw) << ',' << format_double(s.capped) << '\n';
  return out.str();
}

}  // namespace powersum
