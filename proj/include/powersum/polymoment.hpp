// SPDX-License-Identifier: Apache-2.0
#pragma once

// Moments M_p = int_0^1 f(x)^p dx of complex polynomials, computed by
// expanding f^p and integrating monomials, and the root-test probe that
// compares limsup |M_p|^{1/p} with max_{[0,1]} |f|.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "powersum/extended.hpp"
#include "powersum/types.hpp"

namespace powersum {

/// Complex polynomial on [0, 1], coefficients in ascending degree. Keeps an
/// exact copy as Gaussian-integer numerators over one positive integer
/// denominator: every finite double and every decimal literal is rational.
class UnitIntervalPolynomial {
 public:
  UnitIntervalPolynomial();  // the zero polynomial

  static UnitIntervalPolynomial from_complex(const std::vector<Complex>& coeffs);
  /// Exact parse of literals such as "1/2" is not supported; decimals are exact.
  static UnitIntervalPolynomial from_literals(const std::vector<std::string>& coeffs);
  /// "c0,c1,..." with complex literals a+bi.
  static UnitIntervalPolynomial parse(const std::string& text);
  static UnitIntervalPolynomial from_exact(std::vector<ExactComplex> coeffs);

  const std::vector<Complex>& coefficients() const { return coeffs_; }
  std::vector<ExactComplex> exact_coefficients() const;
  const std::vector<GaussInt>& numerators() const { return numerators_; }
  const BigInt& denominator() const { return denominator_; }

  bool is_zero() const { return numerators_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(numerators_.size()) - 1; }

  Complex operator()(double x) const;

  /// c * f, exact in c's binary value.
  UnitIntervalPolynomial scaled(Complex c) const;
  /// x -> f(1 - x), exact.
  UnitIntervalPolynomial reflected() const;

 private:
  void refresh_doubles();

  std::vector<GaussInt> numerators_;
  BigInt denominator_{1};
  std::vector<Complex> coeffs_;
};

enum class PolyArithmetic { Rational, Extended, Double };

struct PolyMoment {
  Complex value;
  std::optional<ExactComplex> exact;  // rational mode only
  double error_bound = 0.0;           // 0 in rational mode
  PolyArithmetic arithmetic = PolyArithmetic::Rational;
};

/// f^p by binary exponentiation of the coefficient vector, then
/// sum_k c_k / (k + 1). `digits` is used in extended mode only.
PolyMoment poly_moment(const UnitIntervalPolynomial& f, unsigned p,
                       PolyArithmetic arithmetic = PolyArithmetic::Rational, unsigned digits = 50);

/// The same computation with the serial schoolbook kernel and no Karatsuba
/// split; kept as the reference for the parallel path.
PolyMoment poly_moment_reference(const UnitIntervalPolynomial& f, unsigned p);

struct SupNorm {
  double value = 0.0;
  double argmax = 0.0;
};

/// max over [0, 1] of |f| from the critical points of |f|^2 (companion-matrix
/// roots of its derivative) and the endpoints. Throws on the zero polynomial.
SupNorm sup_norm_on_unit_interval(const UnitIntervalPolynomial& f);

struct ProbeOptions {
  std::optional<PolyArithmetic> arithmetic;  // automatic when empty
  unsigned digits = 0;                       // 0: chosen from p_max
  double positivity_margin = 0.0;
};

struct PolyRootSample {
  unsigned p = 0;
  double raw = 0.0;
  double capped = 0.0;  // min(raw, sup_norm)
  Complex moment;
};

struct ConjectureReport {
  unsigned p_max = 0;
  std::vector<PolyRootSample> roots;
  double running_sup = 0.0;
  double tail_window_sup = 0.0;
  double sup_norm = 0.0;
  double argmax = 0.0;
  double sampled_sup = 0.0;  // 1024-point floor check
  double gap = 0.0;          // sup_norm - tail_window_sup
  bool positivity_pass = false;
  double positivity_margin = 0.0;
  PolyArithmetic arithmetic = PolyArithmetic::Rational;
  unsigned digits = 0;
};

/// Moments for p = 1..p_max (incremental products f^p = f^{p-1} f), roots,
/// tail-window sup over (p_max/2, p_max], and the sup norm. Rational
/// arithmetic when degree * p_max <= 4096, extended otherwise.
ConjectureReport conjecture_probe(const UnitIntervalPolynomial& f, unsigned p_max,
                                  const ProbeOptions& options = {});

nlohmann::json to_json(const ConjectureReport& report);
std::string write_poly_roots_csv(const ConjectureReport& report);

std::string to_string(PolyArithmetic a);

/// int_0^1 e^{2 pi i p x} dx for integer p >= 1: the moments of the unit
/// circle parametrization, all exactly zero. Shipped as a closed-form fixture
/// (the integrand is not a polynomial).
inline constexpr Complex circle_moment(unsigned /*p*/) { return {0.0, 0.0}; }

}  // namespace powersum
