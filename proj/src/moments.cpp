// SPDX-License-Identifier: Apache-2.0
#include "powersum/moments.hpp"

#include <sstream>

#include "powersum/extended.hpp"
#include "powersum/format.hpp"
#include "powersum/kernels.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

constexpr double kTailDenominatorFloor = 1e-14;
constexpr unsigned kEscalationDigits = 40;

ExtComplex tail_moment_ext(const GeometricTail& t, unsigned p) {
  const ExtComplex rp = int_pow(to_ext(t.ratio), p);
  const ExtComplex numer = int_pow(to_ext(t.coeff), p) * int_pow(rp, t.start);
  return div(numer, ExtComplex(ExtReal(1)) - rp);
}

Complex tail_moment(const GeometricTail& t, unsigned p, PrecisionMode mode) {
  if (mode.is_extended()) {
    PrecisionScope scope(mode.digits);
    return to_double(tail_moment_ext(t, p));
  }
  const Complex rp = int_pow(t.ratio, p);
  const Complex denom = 1.0 - rp;
  if (std::abs(denom) < kTailDenominatorFloor) {
    PrecisionScope scope(kEscalationDigits);
    return to_double(tail_moment_ext(t, p));
  }
  return int_pow(t.coeff, p) * int_pow(rp, t.start) / denom;
}

Complex combine(Complex finite_part, const SequenceSpec& seq, unsigned p, PrecisionMode mode) {
  if (!seq.has_tail()) return finite_part;
  return finite_part + tail_moment(seq.geometric_tail(), p, mode);
}

enum class Kernel { Serial, Omp };

MomentTable build_table(const SequenceSpec& seq, unsigned p_max, PrecisionMode mode, Kernel kernel) {
  if (p_max < 1) throw Error("invariant violated: p_max >= 1 required");
  const Normalized norm = normalize(seq);
  const SequenceSpec& z = norm.sequence;
  const SequenceStats stats = lq_stats(z, z.q());

  std::vector<Complex> finite(p_max);
  if (mode.is_extended()) {
    std::vector<ExtComplex> ext(p_max);
    if (kernel == Kernel::Omp)
      kernels::omp::power_sums(z.head(), mode.digits, ext);
    else
      kernels::serial::power_sums(z.head(), mode.digits, ext);
    for (unsigned i = 0; i < p_max; ++i) finite[i] = to_double(ext[i]);
  } else if (kernel == Kernel::Omp) {
    kernels::omp::power_sums(z.head(), finite);
  } else {
    kernels::serial::power_sums(z.head(), finite);
  }

  MomentTable table;
  table.p_max = p_max;
  table.precision = mode;
  table.normalization_scale = norm.scale;
  table.q = z.q();
  table.lq_norm_qth_power = stats.lq_norm_qth_power;
  table.entries.resize(p_max);
  for (unsigned i = 0; i < p_max; ++i) {
    const unsigned p = i + 1;
    MomentEntry& e = table.entries[i];
    e.p = p;
    e.value = combine(finite[i], z, p, mode);
    e.abs = std::abs(e.value);
    e.bound = p >= z.q() ? apriori_bound(stats, p, z.q()) : lq_stats(z, p).lq_norm_qth_power;
  }
  return table;
}

}  // namespace

Complex moment(const SequenceSpec& seq, unsigned p, PrecisionMode mode) {
  if (p < 1) throw Error("invariant violated: p >= 1 required");
  Complex finite_part;
  if (mode.is_extended()) {
    PrecisionScope scope(mode.digits);
    std::vector<ExtComplex> ext;
    for (const auto& v : seq.head()) ext.push_back(to_ext(v));
    finite_part = to_double(kernels::detail::power_sum_at(std::span<const ExtComplex>(ext), p));
  } else {
    finite_part = kernels::detail::power_sum_at(seq.head(), p);
  }
  return combine(finite_part, seq, p, mode);
}

double apriori_bound(const SequenceStats& stats, unsigned p, unsigned q) {
  if (p < q) throw Error("bound requires p >= q");
  return int_pow(stats.max_modulus, p - q) * stats.lq_norm_qth_power;
}

Complex MomentTable::raw_moment(unsigned p) const {
  if (p < 1 || p > p_max) throw Error("invariant violated: 1 <= p <= p_max required");
  return int_pow(normalization_scale, p) * entries[p - 1].value;
}

MomentTable moment_table(const SequenceSpec& seq, unsigned p_max, PrecisionMode mode) {
  return build_table(seq, p_max, mode, Kernel::Omp);
}

MomentTable moment_table_serial(const SequenceSpec& seq, unsigned p_max, PrecisionMode mode) {
  return build_table(seq, p_max, mode, Kernel::Serial);
}

std::string write_moment_csv(const MomentTable& table) {
  std::ostringstream out;
  out << "# scale=" << format_double(table.normalization_scale)
      << " precision=" << table.precision.to_string() << " q=" << table.q
      << " lq=" << format_double(table.lq_norm_qth_power) << " p_max=" << table.p_max << "\n";
  out << "p,re,im,abs,bound\n";
  for (const auto& e : table.entries) {
    out << e.p << ',' << format_double(e.value.real()) << ',' << format_double(e.value.imag())
        << ',' << format_double(e.abs) << ',' << format_double(e.bound) << '\n';
  }
  return out.str();
}

MomentTable read_moment_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  MomentTable table;
  bool have_header = false;
  bool have_scale = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      std::istringstream meta(line.substr(1));
      std::string token;
      while (meta >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "scale") {
          table.normalization_scale = parse_double(value);
          have_scale = true;
        } else if (key == "precision") {
          table.precision = PrecisionMode::parse(value);
        } else if (key == "q") {
          const double q = parse_double(value);
          if (q < 1 || q != static_cast<unsigned>(q))
            throw Error("invariant violated: q must be a positive integer");
          table.q = static_cast<unsigned>(q);
        } else if (key == "lq") {
          table.lq_norm_qth_power = parse_double(value);
        }
      }
      continue;
    }
    if (!have_header) {
      if (line != "p,re,im,abs,bound") throw Error("parse error: moment CSV header must be p,re,im,abs,bound");
      have_header = true;
      continue;
    }
    const auto cells = split_list(line);
    if (cells.size() != 5) throw Error("parse error: moment CSV row needs 5 fields: " + line);
    MomentEntry e;
    const double p = parse_double(cells[0]);
    e.p = static_cast<unsigned>(p);
    if (p != e.p || e.p != table.entries.size() + 1)
      throw Error("parse error: moment CSV rows must be contiguous from p=1");
    e.value = {parse_double(cells[1]), parse_double(cells[2])};
    e.abs = parse_double(cells[3]);
    e.bound = parse_double(cells[4]);
    table.entries.push_back(e);
  }
  if (!have_header) throw Error("parse error: moment CSV header missing");
  if (!have_scale) throw Error("parse error: moment CSV is missing the scale comment line");
  table.p_max = static_cast<unsigned>(table.entries.size());
  if (table.p_max == 0) throw Error("parse error: moment CSV has no rows");
  return table;
}

}  // namespace powersum
