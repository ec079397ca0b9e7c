// SPDX-License-Identifier: Apache-2.0
#include "powersum/polymoment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <mpfr.h>

#include "powersum/companion.hpp"
#include "powersum/format.hpp"
#include "powersum/kernels.hpp"
#include "powersum/roottest.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

constexpr unsigned kRationalMonomialLimit = 4096;
constexpr double kCriticalImagTol = 1e-9;
constexpr int kFloorSamples = 1024;
constexpr unsigned kRootDigits = 40;

using boost::multiprecision::lcm;

ExtReal int_to_ext(const BigInt& z) {
  ExtReal out;
  mpfr_set_z(out.backend().data(), z.backend().data(), MPFR_RNDN);
  return out;
}

// |M|^{1/p} for M = (re + i im) / den, evaluated through logarithms so that
// neither huge numerators nor tiny moments over- or underflow.
double exact_root(const BigInt& re, const BigInt& im, const BigInt& den, unsigned p) {
  if (re == 0 && im == 0) return 0.0;
  PrecisionScope scope(kRootDigits);
  const ExtReal mag = boost::multiprecision::hypot(int_to_ext(re), int_to_ext(im));
  const ExtReal log_root = (log(mag) - log(int_to_ext(den))) / p;
  return exp(log_root).convert_to<double>();
}

double ext_root(const ExtComplex& m, unsigned p) {
  const ExtReal mag = abs(m);
  if (mag == 0) return 0.0;
  return exp(log(mag) / p).convert_to<double>();
}

double plain_root(Complex m, unsigned p) {
  const double a = std::abs(m);
  return a == 0.0 ? 0.0 : std::pow(a, 1.0 / p);
}

// lcm(1, ..., n), extended incrementally.
class LcmRange {
 public:
  const BigInt& upto(std::size_t n) {
    while (reached_ < n) {
      ++reached_;
      value_ = lcm(value_, BigInt(reached_));
    }
    return value_;
  }

 private:
  BigInt value_{1};
  std::size_t reached_ = 1;
};

struct ExactIntegral {
  BigInt re;
  BigInt im;
  BigInt den;  // positive
};

// int_0^1 sum_k N_k x^k dx / denom = sum_k N_k (L / (k+1)) / (L denom).
ExactIntegral integrate_exact(const std::vector<GaussInt>& num, const BigInt& denom, LcmRange& lcms) {
  const BigInt& big_l = lcms.upto(num.size());
  ExactIntegral out;
  for (std::size_t k = 0; k < num.size(); ++k) {
    const BigInt w = big_l / (k + 1);
    out.re += num[k].re * w;
    out.im += num[k].im * w;
  }
  out.den = big_l * denom;
  return out;
}

ExactComplex to_exact(const ExactIntegral& v) {
  return {BigRational(v.re, v.den), BigRational(v.im, v.den)};
}

template <typename T>
std::vector<T> power_of(const std::vector<T>& base, unsigned p, unsigned digits) {
  std::vector<T> result{T(1)};
  std::vector<T> sq = base;
  while (p > 0) {
    if (p & 1u) result = kernels::multiply<T>(result, sq, digits);
    p >>= 1;
    if (p > 0) sq = kernels::multiply<T>(sq, sq, digits);
  }
  return result;
}

double coefficient_l1(const UnitIntervalPolynomial& f) {
  double s = 0.0;
  for (const auto& c : f.coefficients()) s += std::abs(c);
  return s;
}

// First-order a-priori rounding bound gamma_N (sum |c_i|)^p for a moment
// computed with unit roundoff u.
double rounding_bound(const UnitIntervalPolynomial& f, unsigned p, double u) {
  const double d = std::max(f.degree(), 0);
  const double n_ops = p * (d + 2.0) + d * p + 2.0;
  const double gamma = n_ops * u / (1.0 - n_ops * u);
  return gamma * std::exp(p * std::log(std::max(coefficient_l1(f), 1e-300)));
}

double unit_roundoff_for_digits(unsigned digits) {
  const double bits = std::ceil(digits * std::log2(10.0)) + 1.0;
  return std::ldexp(1.0, 1 - static_cast<int>(bits));
}

std::vector<ExtComplex> ext_coefficients(const UnitIntervalPolynomial& f) {
  std::vector<ExtComplex> out;
  const ExtReal den = int_to_ext(f.denominator());
  for (const auto& n : f.numerators()) out.push_back({int_to_ext(n.re) / den, int_to_ext(n.im) / den});
  return out;
}

ExtComplex integrate_ext(const std::vector<ExtComplex>& c) {
  ExtComplex acc;
  for (std::size_t k = 0; k < c.size(); ++k) {
    acc.re += c[k].re / (k + 1);
    acc.im += c[k].im / (k + 1);
  }
  return acc;
}

Complex integrate_double(const std::vector<Complex>& c) {
  CompensatedComplexSum acc;
  for (std::size_t k = 0; k < c.size(); ++k) acc.add(c[k] / static_cast<double>(k + 1));
  return acc.value();
}

}  // namespace

// ---------------------------------------------------------------------------
// UnitIntervalPolynomial

UnitIntervalPolynomial::UnitIntervalPolynomial() = default;

UnitIntervalPolynomial UnitIntervalPolynomial::from_exact(std::vector<ExactComplex> coeffs) {
  UnitIntervalPolynomial f;
  BigInt den(1);
  for (const auto& c : coeffs) {
    den = lcm(den, boost::multiprecision::denominator(c.re));
    den = lcm(den, boost::multiprecision::denominator(c.im));
  }
  for (const auto& c : coeffs) {
    const BigRational re = c.re * den;
    const BigRational im = c.im * den;
    f.numerators_.push_back({boost::multiprecision::numerator(re), boost::multiprecision::numerator(im)});
  }
  while (!f.numerators_.empty() && f.numerators_.back().re == 0 && f.numerators_.back().im == 0)
    f.numerators_.pop_back();
  f.denominator_ = f.numerators_.empty() ? BigInt(1) : den;
  f.refresh_doubles();
  return f;
}

UnitIntervalPolynomial UnitIntervalPolynomial::from_complex(const std::vector<Complex>& coeffs) {
  std::vector<ExactComplex> exact;
  for (const auto& c : coeffs) {
    if (!is_finite(c)) throw Error("invariant violated: polynomial coefficients must be finite");
    exact.push_back({exact_rational(c.real()), exact_rational(c.imag())});
  }
  return from_exact(std::move(exact));
}

UnitIntervalPolynomial UnitIntervalPolynomial::from_literals(const std::vector<std::string>& coeffs) {
  std::vector<ExactComplex> exact;
  for (const auto& lit : coeffs) {
    const auto [re, im] = split_complex_literal(lit);
    try {
      exact.push_back({parse_decimal_rational(re), parse_decimal_rational(im)});
    } catch (const Error&) {
      throw Error("parse error: invalid complex literal '" + lit + "'");
    }
  }
  return from_exact(std::move(exact));
}

UnitIntervalPolynomial UnitIntervalPolynomial::parse(const std::string& text) {
  const auto items = split_list(text);
  if (items.empty()) throw Error("parse error: polynomial needs at least one coefficient");
  return from_literals(items);
}

std::vector<ExactComplex> UnitIntervalPolynomial::exact_coefficients() const {
  std::vector<ExactComplex> out;
  for (const auto& n : numerators_)
    out.push_back({BigRational(n.re, denominator_), BigRational(n.im, denominator_)});
  return out;
}

void UnitIntervalPolynomial::refresh_doubles() {
  coeffs_.clear();
  for (const auto& n : numerators_)
    coeffs_.emplace_back(to_double(BigRational(n.re, denominator_)), to_double(BigRational(n.im, denominator_)));
}

Complex UnitIntervalPolynomial::operator()(double x) const {
  Complex v(0.0);
  for (std::size_t i = coeffs_.size(); i-- > 0;) v = v * x + coeffs_[i];
  return v;
}

UnitIntervalPolynomial UnitIntervalPolynomial::scaled(Complex c) const {
  const ExactComplex ce{exact_rational(c.real()), exact_rational(c.imag())};
  std::vector<ExactComplex> out;
  for (const auto& a : exact_coefficients()) out.push_back(a * ce);
  return from_exact(std::move(out));
}

UnitIntervalPolynomial UnitIntervalPolynomial::reflected() const {
  // f(1 - x) = sum_k c_k sum_j C(k, j) (-x)^j
  const std::size_t n = numerators_.size();
  std::vector<GaussInt> out(n);
  std::vector<BigInt> binom{BigInt(1)};
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      std::vector<BigInt> next(k + 1);
      next[0] = 1;
      next[k] = 1;
      for (std::size_t j = 1; j < k; ++j) next[j] = binom[j - 1] + binom[j];
      binom = std::move(next);
    }
    for (std::size_t j = 0; j <= k; ++j) {
      const BigInt coef = (j % 2 == 0) ? binom[j] : BigInt(-binom[j]);
      out[j].re += numerators_[k].re * coef;
      out[j].im += numerators_[k].im * coef;
    }
  }
  UnitIntervalPolynomial g;
  g.numerators_ = std::move(out);
  g.denominator_ = denominator_;
  while (!g.numerators_.empty() && g.numerators_.back().re == 0 && g.numerators_.back().im == 0)
    g.numerators_.pop_back();
  g.refresh_doubles();
  return g;
}

// ---------------------------------------------------------------------------
// Moments

PolyMoment poly_moment(const UnitIntervalPolynomial& f, unsigned p, PolyArithmetic arithmetic, unsigned digits) {
  if (p < 1) throw Error("invariant violated: p >= 1 required");
  PolyMoment out;
  out.arithmetic = arithmetic;
  if (f.is_zero()) {
    out.exact = ExactComplex{};
    return out;
  }
  switch (arithmetic) {
    case PolyArithmetic::Rational: {
      const auto power = power_of(f.numerators(), p, 0);
      LcmRange lcms;
      const ExactComplex exact =
          to_exact(integrate_exact(power, boost::multiprecision::pow(f.denominator(), p), lcms));
      out.value = {to_double(exact.re), to_double(exact.im)};
      out.exact = exact;
      break;
    }
    case PolyArithmetic::Extended: {
      if (digits < 16) throw Error("invariant violated: extended mode needs >= 16 digits");
      PrecisionScope scope(digits);
      const auto power = power_of(ext_coefficients(f), p, digits);
      out.value = to_double(integrate_ext(power));
      out.error_bound = rounding_bound(f, p, unit_roundoff_for_digits(digits));
      break;
    }
    case PolyArithmetic::Double: {
      const auto power = power_of(f.coefficients(), p, 0);
      out.value = integrate_double(power);
      out.error_bound = rounding_bound(f, p, std::ldexp(1.0, -53));
      break;
    }
  }
  return out;
}

PolyMoment poly_moment_reference(const UnitIntervalPolynomial& f, unsigned p) {
  if (p < 1) throw Error("invariant violated: p >= 1 required");
  PolyMoment out;
  std::vector<GaussInt> power{GaussInt(1)};
  for (unsigned i = 0; i < p; ++i) power = kernels::serial::convolve<GaussInt>(power, f.numerators());
  if (f.is_zero()) power.clear();
  LcmRange lcms;
  const ExactComplex exact =
      to_exact(integrate_exact(power, boost::multiprecision::pow(f.denominator(), p), lcms));
  out.value = {to_double(exact.re), to_double(exact.im)};
  out.exact = exact;
  return out;
}

// ---------------------------------------------------------------------------
// Sup norm

SupNorm sup_norm_on_unit_interval(const UnitIntervalPolynomial& f) {
  if (f.is_zero()) throw Error("degenerate: zero polynomial");
  const auto& c = f.coefficients();
  const int d = f.degree();

  std::vector<double> candidates{0.0, 1.0};
  if (d >= 1) {
    // g(x) = |f(x)|^2 = f(x) conj(f)(x) on the real line.
    std::vector<double> g(2 * d + 1, 0.0);
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j <= d; ++j) g[i + j] += (c[i] * std::conj(c[j])).real();
    std::vector<Complex> dg(2 * d);
    for (int k = 0; k < 2 * d; ++k) dg[k] = (k + 1) * g[k + 1];
    const Complex lead = dg.back();
    for (auto& v : dg) v /= lead;
    dg.back() = 1.0;
    std::vector<double> crit;
    for (const Complex& r : companion_roots(dg)) {
      if (std::abs(r.imag()) >= kCriticalImagTol) continue;
      if (r.real() < -kCriticalImagTol || r.real() > 1.0 + kCriticalImagTol) continue;
      // A few real Newton steps on g' sharpen the location.
      double x = r.real();
      for (int it = 0; it < 3; ++it) {
        double v = 0.0, dv = 0.0;
        for (std::size_t k = dg.size(); k-- > 0;) {
          dv = dv * x + v;
          v = v * x + dg[k].real();
        }
        if (dv == 0.0) break;
        const double next = x - v / dv;
        if (!std::isfinite(next) || std::abs(next - x) > 1e-6) break;
        x = next;
      }
      crit.push_back(std::clamp(x, 0.0, 1.0));
    }
    std::sort(crit.begin(), crit.end());
    candidates.insert(candidates.end(), crit.begin(), crit.end());
  }

  SupNorm best{std::abs(f(candidates[0])), candidates[0]};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double v = std::abs(f(candidates[i]));
    if (v > best.value) best = {v, candidates[i]};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Probe

std::string to_string(PolyArithmetic a) {
  switch (a) {
    case PolyArithmetic::Rational:
      return "rational";
    case PolyArithmetic::Extended:
      return "extended";
    case PolyArithmetic::Double:
      return "double";
  }
  return "?";
}

ConjectureReport conjecture_probe(const UnitIntervalPolynomial& f, unsigned p_max, const ProbeOptions& options) {
  if (p_max < 8) throw Error("window undefined: p_max >= 8 required");
  if (f.is_zero()) throw Error("degenerate: zero polynomial");

  ConjectureReport report;
  report.p_max = p_max;
  report.positivity_margin = options.positivity_margin;

  const SupNorm sn = sup_norm_on_unit_interval(f);
  report.sup_norm = sn.value;
  report.argmax = sn.argmax;
  for (int i = 0; i < kFloorSamples; ++i) {
    const double x = static_cast<double>(i) / (kFloorSamples - 1);
    const double v = std::abs(f(x));
    report.sampled_sup = std::max(report.sampled_sup, v);
    if (v > report.sup_norm) {
      report.sup_norm = v;
      report.argmax = x;
    }
  }

  const auto degree = static_cast<unsigned>(std::max(f.degree(), 0));
  report.arithmetic = options.arithmetic.value_or(
      degree * p_max <= kRationalMonomialLimit ? PolyArithmetic::Rational : PolyArithmetic::Extended);
  if (report.arithmetic == PolyArithmetic::Extended) {
    report.digits = options.digits;
    if (report.digits == 0) {
      // Enough digits to absorb cancellation of the expanded coefficients.
      const double growth = std::log10(std::max(1.0, coefficient_l1(f) / report.sup_norm));
      report.digits = 30 + static_cast<unsigned>(std::ceil(p_max * growth));
    }
  }

  report.roots.resize(p_max);
  switch (report.arithmetic) {
    case PolyArithmetic::Rational: {
      std::vector<GaussInt> power{GaussInt(1)};
      BigInt den(1);
      LcmRange lcms;
      for (unsigned p = 1; p <= p_max; ++p) {
        power = kernels::omp::convolve<GaussInt>(power, f.numerators());
        den *= f.denominator();
        const ExactIntegral m = integrate_exact(power, den, lcms);
        const ExactComplex exact = to_exact(m);
        report.roots[p - 1] = {p, exact_root(m.re, m.im, m.den, p), 0.0,
                               {to_double(exact.re), to_double(exact.im)}};
      }
      break;
    }
    case PolyArithmetic::Extended: {
      PrecisionScope scope(report.digits);
      const auto base = ext_coefficients(f);
      std::vector<ExtComplex> power{ExtComplex(1)};
      for (unsigned p = 1; p <= p_max; ++p) {
        power = kernels::omp::convolve<ExtComplex>(power, base, report.digits);
        const ExtComplex m = integrate_ext(power);
        report.roots[p - 1] = {p, ext_root(m, p), 0.0, to_double(m)};
      }
      break;
    }
    case PolyArithmetic::Double: {
      std::vector<Complex> power{Complex(1.0)};
      for (unsigned p = 1; p <= p_max; ++p) {
        power = kernels::omp::convolve<Complex>(power, f.coefficients());
        const Complex m = integrate_double(power);
        report.roots[p - 1] = {p, plain_root(m, p), 0.0, m};
      }
      break;
    }
  }

  std::vector<double> capped;
  for (auto& s : report.roots) {
    s.capped = std::min(s.raw, report.sup_norm);
    capped.push_back(s.capped);
  }
  const LimsupEstimate est = limsup_estimate(capped);
  report.running_sup = est.running_sup;
  report.tail_window_sup = est.tail_window_sup;
  report.gap = report.sup_norm - report.tail_window_sup;
  report.positivity_pass = report.tail_window_sup > report.positivity_margin;
  return report;
}

nlohmann::json to_json(const ConjectureReport& r) {
  nlohmann::json j;
  j["p_max"] = r.p_max;
  j["sup_norm"] = r.sup_norm;
  j["argmax"] = r.argmax;
  j["sampled_sup"] = r.sampled_sup;
  j["running_sup"] = r.running_sup;
  j["tail_window_sup"] = r.tail_window_sup;
  j["gap"] = r.gap;
  j["positivity_margin"] = r.positivity_margin;
  j["positivity_verdict"] = r.positivity_pass ? "PASS" : "FAIL";
  j["arithmetic"] = to_string(r.arithmetic);
  if (r.arithmetic == PolyArithmetic::Extended) j["digits"] = r.digits;
  return j;
}

std::string write_poly_roots_csv(const ConjectureReport& report) {
  std::ostringstream out;
  out << "p,re,im,root_raw,root_capped\n";
  for (const auto& s : report.roots)
    out << s.p << ',' << format_double(s.moment.real()) << ',' << format_double(s.moment.imag()) << ','
        << format_double(s.raw) << ',' << format_double(s.capped) << '\n';
  return out.str();
}

}  // namespace powersum
