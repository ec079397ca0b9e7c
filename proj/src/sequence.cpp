// SPDX-License-Identifier: Apache-2.0
#include "powersum/sequence.hpp"

#include <cmath>

#include "powersum/format.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

void require_finite(Complex z, const char* what) {
  if (!is_finite(z))
    throw Error(std::string("invariant violated: ") + what + " must be finite");
}

void require_q(unsigned q) {
  if (q == 0) throw Error("invariant violated: q >= 1 required");
}

double tail_start_modulus(const GeometricTail& t) {
  return std::abs(t.coeff) * std::pow(std::abs(t.ratio), static_cast<double>(t.start));
}

}  // namespace

SequenceSpec SequenceSpec::finite(std::vector<Complex> values, unsigned q) {
  require_q(q);
  for (const auto& z : values) require_finite(z, "sequence values");
  SequenceSpec s;
  s.head_ = std::move(values);
  s.q_ = q;
  return s;
}

SequenceSpec SequenceSpec::tail(std::vector<Complex> head, Complex coeff, Complex ratio,
                                std::uint64_t start, unsigned q) {
  require_q(q);
  for (const auto& z : head) require_finite(z, "sequence values");
  require_finite(coeff, "tail coeff");
  require_finite(ratio, "tail ratio");
  if (!(std::abs(ratio) < 1.0))
    throw Error("invariant violated: |ratio| < 1 required for a geometric tail (got |ratio| = " +
                format_double(std::abs(ratio)) + ")");
  if (start < head.size())
    throw Error("invariant violated: tail start must not overlap the head (start >= head length)");
  SequenceSpec s;
  s.head_ = std::move(head);
  s.tail_ = GeometricTail{coeff, ratio, start};
  s.q_ = q;
  return s;
}

Complex SequenceSpec::element(std::uint64_t n) const {
  if (n < head_.size()) return head_[n];
  if (tail_ && n >= tail_->start) return tail_->coeff * int_pow(tail_->ratio, n);
  return {0.0, 0.0};
}

SequenceSpec SequenceSpec::with_q(unsigned q) const {
  require_q(q);
  SequenceSpec s = *this;
  s.q_ = q;
  return s;
}

SequenceSpec SequenceSpec::scaled(Complex c) const {
  require_finite(c, "scale factor");
  SequenceSpec s = *this;
  for (auto& z : s.head_) z *= c;
  if (s.tail_) s.tail_->coeff *= c;
  return s;
}

double max_modulus(const SequenceSpec& seq) {
  double best = 0.0;
  for (const auto& z : seq.head()) best = std::max(best, std::abs(z));
  // |z_n| is strictly decreasing along the tail, so its first term dominates.
  if (seq.has_tail()) best = std::max(best, tail_start_modulus(seq.geometric_tail()));
  return best;
}

std::int64_t argmax_modulus(const SequenceSpec& seq) {
  double best = 0.0;
  std::int64_t arg = -1;
  const auto& head = seq.head();
  for (std::size_t n = 0; n < head.size(); ++n) {
    const double a = std::abs(head[n]);
    if (a > best) {
      best = a;
      arg = static_cast<std::int64_t>(n);
    }
  }
  if (seq.has_tail()) {
    const auto& t = seq.geometric_tail();
    if (tail_start_modulus(t) > best) arg = static_cast<std::int64_t>(t.start);
  }
  return arg;
}

SequenceStats lq_stats(const SequenceSpec& seq, unsigned q) {
  if (q == 0) throw Error("invariant violated: q >= 1 required");
  CompensatedSum acc;
  for (const auto& z : seq.head()) acc.add(int_pow(std::abs(z), q));
  if (seq.has_tail()) {
    const auto& t = seq.geometric_tail();
    const double r = std::abs(t.ratio);
    if (std::abs(t.coeff) > 0.0) {
      // |coeff|^q |ratio|^{qN} / (1 - |ratio|^q)
      const double numer =
          int_pow(std::abs(t.coeff), q) * std::pow(r, static_cast<double>(q) * static_cast<double>(t.start));
      const double denom = r == 0.0 ? 1.0 : -std::expm1(static_cast<double>(q) * std::log(r));
      acc.add(numer / denom);
    }
  }
  SequenceStats stats;
  stats.max_modulus = max_modulus(seq);
  stats.argmax_index = argmax_modulus(seq);
  stats.lq_norm_qth_power = acc.value();
  return stats;
}

Normalized normalize(const SequenceSpec& seq) {
  const double m = max_modulus(seq);
  if (m == 0.0) throw Error("degenerate: zero sequence");
  // Dividing componentwise keeps |z_argmax / m| within one rounding of 1.
  auto div = [m](Complex z) { return Complex(z.real() / m, z.imag() / m); };
  std::vector<Complex> head;
  head.reserve(seq.head().size());
  for (const auto& z : seq.head()) head.push_back(div(z));
  if (seq.has_tail()) {
    const auto& t = seq.geometric_tail();
    return {SequenceSpec::tail(std::move(head), div(t.coeff), t.ratio, t.start, seq.q()), m};
  }
  return {SequenceSpec::finite(std::move(head), seq.q()), m};
}

SequenceSpec power_map(const SequenceSpec& seq, unsigned q) {
  if (q == 0) throw Error("invariant violated: q >= 1 required");
  const unsigned new_q = (seq.q() + q - 1) / q;
  std::vector<Complex> head;
  head.reserve(seq.head().size());
  for (const auto& z : seq.head()) head.push_back(int_pow(z, q));
  if (seq.has_tail()) {
    const auto& t = seq.geometric_tail();
    return SequenceSpec::tail(std::move(head), int_pow(t.coeff, q), int_pow(t.ratio, q), t.start,
                              new_q);
  }
  return SequenceSpec::finite(std::move(head), new_q);
}

namespace {

nlohmann::json complex_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

Complex complex_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw Error(std::string("parse error: ") + what + " must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list(const nlohmann::json& j, const char* what) {
  if (!j.is_array()) throw Error(std::string("parse error: ") + what + " must be an array");
  std::vector<Complex> out;
  for (const auto& item : j) out.push_back(complex_from_json(item, what));
  return out;
}

}  // namespace

nlohmann::json to_json(const SequenceSpec& seq) {
  nlohmann::json j;
  nlohmann::json values = nlohmann::json::array();
  for (const auto& z : seq.head()) values.push_back(complex_json(z));
  if (seq.has_tail()) {
    const auto& t = seq.geometric_tail();
    j["kind"] = "tail";
    j["q"] = seq.q();
    j["head"] = values;
    j["coeff"] = complex_json(t.coeff);
    j["ratio"] = complex_json(t.ratio);
    j["start"] = t.start;
  } else {
    j["kind"] = "finite";
    j["q"] = seq.q();
    j["values"] = values;
  }
  return j;
}

SequenceSpec sequence_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("parse error: sequence must be a JSON object");
  const std::string kind = j.value("kind", "");
  unsigned q = 1;
  if (j.contains("q")) {
    const auto& jq = j["q"];
    if (!jq.is_number_integer() || jq.get<long long>() < 1)
      throw Error("invariant violated: q must be a positive integer");
    q = jq.get<unsigned>();
  }
  if (kind == "finite") {
    if (!j.contains("values")) throw Error("parse error: finite sequence needs \"values\"");
    return SequenceSpec::finite(complex_list(j["values"], "values"), q);
  }
  if (kind == "tail") {
    for (const char* key : {"coeff", "ratio", "start"})
      if (!j.contains(key)) throw Error(std::string("parse error: tail sequence needs \"") + key + "\"");
    if (!j["start"].is_number_unsigned() && !(j["start"].is_number_integer() && j["start"].get<long long>() >= 0))
      throw Error("parse error: start must be a nonnegative integer");
    std::vector<Complex> head;
    if (j.contains("head")) head = complex_list(j["head"], "head");
    return SequenceSpec::tail(std::move(head), complex_from_json(j["coeff"], "coeff"),
                              complex_from_json(j["ratio"], "ratio"), j["start"].get<std::uint64_t>(), q);
  }
  throw Error("parse error: kind must be \"finite\" or \"tail\"");
}

std::string serialize_sequence(const SequenceSpec& seq) { return to_json(seq).dump() + "\n"; }

SequenceSpec parse_sequence(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("parse error: invalid sequence JSON (") + e.what() + ")");
  }
  return sequence_from_json(j);
}

}  // namespace powersum
