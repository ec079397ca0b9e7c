// SPDX-License-Identifier: Apache-2.0
#pragma once

// Complex sequences: finite lists, or a finite head followed by a single
// geometric tail z_n = coeff * ratio^n for n >= start. Indices are 0-based.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "powersum/types.hpp"

namespace powersum {

struct GeometricTail {
  Complex coeff;
  Complex ratio;       // |ratio| < 1
  std::uint64_t start = 0;
};

class SequenceSpec {
 public:
  enum class Kind { Finite, Tail };

  static SequenceSpec finite(std::vector<Complex> values, unsigned q = 1);
  /// Head occupies [0, head.size()), zeros fill [head.size(), start), the
  /// geometric tail occupies n >= start. Throws on |ratio| >= 1, overlapping
  /// head and tail, non-finite values or q == 0.
  static SequenceSpec tail(std::vector<Complex> head, Complex coeff, Complex ratio,
                           std::uint64_t start, unsigned q = 1);

  Kind kind() const { return tail_ ? Kind::Tail : Kind::Finite; }
  bool has_tail() const { return tail_.has_value(); }
  const std::vector<Complex>& head() const { return head_; }
  const GeometricTail& geometric_tail() const { return *tail_; }
  unsigned q() const { return q_; }

  /// z_n; zero outside the head when there is no tail.
  Complex element(std::uint64_t n) const;

  SequenceSpec with_q(unsigned q) const;
  /// c * z_n elementwise.
  SequenceSpec scaled(Complex c) const;

 private:
  SequenceSpec() = default;

  std::vector<Complex> head_;
  std::optional<GeometricTail> tail_;
  unsigned q_ = 1;
};

struct SequenceStats {
  double max_modulus = 0.0;
  std::int64_t argmax_index = -1;  // -1 for the empty / all-zero sequence
  double lq_norm_qth_power = 0.0;  // sum |z_n|^q
};

double max_modulus(const SequenceSpec& seq);
std::int64_t argmax_modulus(const SequenceSpec& seq);
SequenceStats lq_stats(const SequenceSpec& seq, unsigned q);

struct Normalized {
  SequenceSpec sequence;
  double scale;
};
/// Returns (seq / m, m) with m the max modulus. Throws on the zero sequence.
Normalized normalize(const SequenceSpec& seq);

/// v_n = z_n^q. The declared exponent of the result is ceil(seq.q / q),
/// which is 1 whenever q >= seq.q.
SequenceSpec power_map(const SequenceSpec& seq, unsigned q);

nlohmann::json to_json(const SequenceSpec& seq);
SequenceSpec sequence_from_json(const nlohmann::json& j);
std::string serialize_sequence(const SequenceSpec& seq);
SequenceSpec parse_sequence(const std::string& text);

}  // namespace powersum
