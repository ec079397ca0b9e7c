// SPDX-License-Identifier: Apache-2.0
#include "powersum/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/SVD>

#include "powersum/companion.hpp"
#include "powersum/extended.hpp"
#include "powersum/format.hpp"
#include "powersum/summation.hpp"

namespace powersum {

namespace {

void require_moments(std::span<const Complex> moments, std::size_t needed) {
  if (moments.size() < needed)
    throw Error("invariant violated: " + std::to_string(needed) + " moments required, got " +
                std::to_string(moments.size()));
}

Eigen::VectorXd hankel_singular_values(const Eigen::MatrixXcd& h) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(h);
  return svd.singularValues();
}

double condition_estimate(const Eigen::MatrixXcd& h) {
  const Eigen::VectorXd s = hankel_singular_values(h);
  if (s.size() == 0) return 1.0;
  const double smin = s(s.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

template <typename T>
void horner(const std::vector<T>& c, const T& z, T& value, T& deriv) {
  value = c.back();
  deriv = T(0);
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[i];
  }
}

Complex polish_root(const std::vector<Complex>& c, Complex z) {
  for (int it = 0; it < 4; ++it) {
    Complex v, d;
    horner(c, z, v, d);
    if (d == 0.0) break;
    const Complex next = z - v / d;
    Complex vn, dn;
    horner(c, next, vn, dn);
    if (!(std::abs(vn) < std::abs(v))) break;
    z = next;
  }
  return z;
}

std::vector<unsigned> round_weights(const std::vector<Complex>& raw) {
  std::vector<unsigned> out;
  for (const Complex& w : raw) {
    const double r = std::round(w.real());
    if (r < 1.0 || std::abs(w - Complex(r, 0.0)) > kWeightRoundingTolerance)
      throw Error("inconsistent moment stream: weight " + format_double(w.real()) + "+" +
                  format_double(w.imag()) + "i is not within 0.1 of a positive integer");
    out.push_back(static_cast<unsigned>(r));
  }
  return out;
}

double residual_of(const std::vector<Complex>& nodes, const std::vector<unsigned>& weights,
                   std::span<const Complex> moments, unsigned k) {
  const std::size_t p_top = std::min<std::size_t>(moments.size(), 2 * std::max(k, 1u));
  double worst = 0.0;
  for (std::size_t p = 1; p <= p_top; ++p) {
    CompensatedComplexSum acc;
    for (std::size_t j = 0; j < nodes.size(); ++j)
      acc.add(static_cast<double>(weights[j]) * int_pow(nodes[j], p));
    worst = std::max(worst, std::abs(acc.value() - moments[p - 1]));
  }
  return worst;
}

void sort_nodes(Recovery& r) {
  std::vector<std::size_t> idx(r.nodes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const double ma = std::abs(r.nodes[a]), mb = std::abs(r.nodes[b]);
    if (ma != mb) return ma > mb;
    return std::arg(r.nodes[a]) < std::arg(r.nodes[b]);
  });
  std::vector<Complex> nodes;
  std::vector<unsigned> weights;
  for (std::size_t i : idx) {
    nodes.push_back(r.nodes[i]);
    weights.push_back(r.weights[i]);
  }
  r.nodes = std::move(nodes);
  r.weights = std::move(weights);
}

Recovery empty_recovery(std::span<const Complex> moments, PrecisionMode mode) {
  Recovery r;
  r.precision = mode;
  r.prony_polynomial = {Complex(1.0)};
  r.condition = 1.0;
  r.residual = residual_of({}, {}, moments, 0);
  return r;
}

// Gaussian elimination with partial pivoting in extended precision.
std::vector<ExtComplex> solve_ext(std::vector<std::vector<ExtComplex>> a, std::vector<ExtComplex> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    ExtReal best = abs(a[col][col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      ExtReal v = abs(a[r][col]);
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best == 0) throw Error("escalate precision: Hankel system is singular at this order");
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const ExtComplex f = div(a[r][col], a[col][col]);
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<ExtComplex> x(n);
  for (std::size_t i = n; i-- > 0;) {
    ExtComplex s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = div(s, a[i][i]);
  }
  return x;
}

}  // namespace

HankelSystem hankel_system(std::span<const Complex> moments, unsigned k) {
  require_moments(moments, 2 * static_cast<std::size_t>(k));
  HankelSystem sys;
  sys.k = k;
  sys.matrix.resize(k, k);
  sys.rhs.resize(k);
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < k; ++j) sys.matrix(i, j) = moments[i + j];
    sys.rhs(i) = -moments[k + i];
  }
  return sys;
}

unsigned rank_detect(std::span<const Complex> moments, double tol_rel) {
  if (!(tol_rel > 0.0 && tol_rel < 1.0)) throw Error("invariant violated: tol_rel in (0, 1) required");
  const auto big_k = static_cast<unsigned>(moments.size() / 2);
  if (big_k == 0) return 0;
  Eigen::MatrixXcd h(big_k, big_k);
  for (unsigned i = 0; i < big_k; ++i)
    for (unsigned j = 0; j < big_k; ++j) h(i, j) = moments[i + j];
  const Eigen::VectorXd s = hankel_singular_values(h);
  if (s(0) == 0.0) return 0;
  unsigned rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol_rel * s(0)) ++rank;
  return rank;
}

Recovery prony_recover(std::span<const Complex> moments, unsigned k) {
  if (k == 0) return empty_recovery(moments, PrecisionMode::double_precision());
  const HankelSystem sys = hankel_system(moments, k);
  Recovery r;
  r.precision = PrecisionMode::double_precision();
  r.detected_order = k;
  r.condition = condition_estimate(sys.matrix);
  if (!(r.condition <= kHankelConditionLimit))
    throw EscalatePrecision("escalate precision: Hankel condition estimate " + format_double(r.condition) +
                            " exceeds 1e12");

  const Eigen::VectorXcd a = sys.matrix.partialPivLu().solve(sys.rhs);
  r.prony_polynomial.assign(a.data(), a.data() + k);
  r.prony_polynomial.push_back(1.0);

  for (const Complex& z : companion_roots(r.prony_polynomial))
    r.nodes.push_back(polish_root(r.prony_polynomial, z));

  // Weights from the Vandermonde moment match sum_j w_j z_j^p = M_p, p = 1..k.
  Eigen::MatrixXcd v(k, k);
  Eigen::VectorXcd m(k);
  for (unsigned p = 1; p <= k; ++p) {
    for (unsigned j = 0; j < k; ++j) v(p - 1, j) = int_pow(r.nodes[j], p);
    m(p - 1) = moments[p - 1];
  }
  const Eigen::VectorXcd w = v.fullPivLu().solve(m);
  r.weights = round_weights(std::vector<Complex>(w.data(), w.data() + k));
  sort_nodes(r);
  r.residual = residual_of(r.nodes, r.weights, moments, k);
  return r;
}

Recovery prony_recover_extended(std::span<const Complex> moments, unsigned k, unsigned digits) {
  const PrecisionMode mode = PrecisionMode::extended(digits);
  if (k == 0) return empty_recovery(moments, mode);
  const HankelSystem sys = hankel_system(moments, k);
  PrecisionScope scope(digits);

  Recovery r;
  r.precision = mode;
  r.detected_order = k;
  r.condition = condition_estimate(sys.matrix);

  std::vector<std::vector<ExtComplex>> h(k, std::vector<ExtComplex>(k));
  std::vector<ExtComplex> rhs(k);
  for (unsigned i = 0; i < k; ++i) {
    for (unsigned j = 0; j < k; ++j) h[i][j] = to_ext(moments[i + j]);
    rhs[i] = to_ext(-moments[k + i]);
  }
  std::vector<ExtComplex> coeffs = solve_ext(std::move(h), std::move(rhs));
  coeffs.push_back(ExtComplex(1));
  for (const auto& c : coeffs) r.prony_polynomial.push_back(to_double(c));

  // Double-precision eigenvalues seed Newton iterations in extended precision.
  const ExtReal eps = boost::multiprecision::pow(ExtReal(10), -static_cast<int>(digits) + 5);
  std::vector<ExtComplex> nodes;
  for (const Complex& seed : companion_roots(r.prony_polynomial)) {
    ExtComplex z = to_ext(seed);
    for (int it = 0; it < 60; ++it) {
      ExtComplex v, d;
      horner(coeffs, z, v, d);
      if (d.norm() == 0) break;
      const ExtComplex step = div(v, d);
      z -= step;
      if (abs(step) <= eps * (1 + abs(z))) break;
    }
    nodes.push_back(z);
  }

  std::vector<std::vector<ExtComplex>> v(k, std::vector<ExtComplex>(k));
  std::vector<ExtComplex> m(k);
  for (unsigned p = 1; p <= k; ++p) {
    for (unsigned j = 0; j < k; ++j) v[p - 1][j] = int_pow(nodes[j], p);
    m[p - 1] = to_ext(moments[p - 1]);
  }
  const std::vector<ExtComplex> w = solve_ext(std::move(v), std::move(m));
  std::vector<Complex> wd;
  for (const auto& x : w) wd.push_back(to_double(x));
  r.weights = round_weights(wd);
  for (const auto& z : nodes) r.nodes.push_back(to_double(z));
  sort_nodes(r);
  r.residual = residual_of(r.nodes, r.weights, moments, k);
  return r;
}

Recovery recover(std::span<const Complex> moments, const RecoverOptions& options) {
  unsigned k = 0;
  if (options.order) {
    k = *options.order;
  } else {
    const std::size_t usable = std::min<std::size_t>(moments.size(), 2 * options.max_hankel_size);
    k = rank_detect(moments.first(usable), options.tol_rel);
  }
  try {
    return prony_recover(moments, k);
  } catch (const EscalatePrecision&) {
    if (!options.allow_escalation) throw;
  }
  return prony_recover_extended(moments, k, options.extended_digits);
}

double recovery_residual(const Recovery& recovery, std::span<const Complex> moments) {
  return residual_of(recovery.nodes, recovery.weights, moments, recovery.detected_order);
}

Recovery rescale(Recovery recovery, double scale, std::span<const Complex> raw_moments) {
  for (auto& z : recovery.nodes) z *= scale;
  // c_i of prod (x - s z_j) is s^{k-i} times the normalized coefficient.
  const std::size_t k = recovery.prony_polynomial.size() - 1;
  for (std::size_t i = 0; i < recovery.prony_polynomial.size(); ++i)
    recovery.prony_polynomial[i] *= std::pow(scale, static_cast<double>(k - i));
  recovery.residual = recovery_residual(recovery, raw_moments);
  return recovery;
}

std::vector<Complex> newton_elementary(std::span<const Complex> moments, unsigned k) {
  require_moments(moments, k);
  std::vector<Complex> e(k + 1);
  e[0] = 1.0;
  for (unsigned p = 1; p <= k; ++p) {
    CompensatedComplexSum acc;
    for (unsigned i = 1; i <= p; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc.add(sign * e[p - i] * moments[i - 1]);
    }
    e[p] = acc.value() / static_cast<double>(p);
  }
  return {e.begin() + 1, e.end()};
}

ZeroMomentCertificate zero_moment_certificate(std::span<const Complex> moments, unsigned k, double tol) {
  if (!(tol > 0.0)) throw Error("invariant violated: tol > 0 required");
  ZeroMomentCertificate cert;
  cert.k = k;
  cert.tol = tol;
  cert.elementary = newton_elementary(moments, k);
  for (unsigned p = 1; p <= k; ++p) cert.max_moment = std::max(cert.max_moment, std::abs(moments[p - 1]));
  cert.elementary_bound = k * tol * std::pow(1.0 + cert.max_moment, static_cast<double>(k));
  bool within = cert.max_moment <= tol;
  // Fujiwara bound on the roots of x^k - e_1 x^{k-1} + ... + (-1)^k e_k.
  double fuj = 0.0;
  for (unsigned p = 1; p <= k; ++p) {
    const double ep = std::abs(cert.elementary[p - 1]);
    if (ep > cert.elementary_bound) within = false;
    const double term = (p == k) ? ep / 2.0 : ep;
    fuj = std::max(fuj, std::pow(term, 1.0 / p));
  }
  cert.root_bound = 2.0 * fuj;
  cert.pass = within;
  return cert;
}

std::vector<std::size_t> match_nodes(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error("invariant violated: node sets must have equal size");
  const std::size_t n = a.size();
  if (n == 0) return {};
  // Hungarian method on cost |a_i - b_j|, 1-based potentials.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1), v(n + 1);
  std::vector<std::size_t> p(n + 1), way(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = std::abs(a[i0 - 1] - b[j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t j = 1; j <= n; ++j) perm[p[j] - 1] = j - 1;
  return perm;
}

double matched_max_distance(std::span<const Complex> a, std::span<const Complex> b) {
  const auto perm = match_nodes(a, b);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
  return worst;
}

nlohmann::json to_json(const Recovery& r) {
  nlohmann::json j;
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& z : r.nodes) nodes.push_back({z.real(), z.imag()});
  j["nodes"] = nodes;
  j["weights"] = r.weights;
  j["residual"] = r.residual;
  j["detected_order"] = r.detected_order;
  return j;
}

nlohmann::json to_json(const ZeroMomentCertificate& c) {
  nlohmann::json j;
  j["verdict"] = c.pass ? "PASS" : "FAIL";
  j["k"] = c.k;
  j["tol"] = c.tol;
  j["max_moment"] = c.max_moment;
  j["elementary_bound"] = c.elementary_bound;
  nlohmann::json e = nlohmann::json::array();
  for (const auto& z : c.elementary) e.push_back({z.real(), z.imag()});
  j["elementary"] = e;
  j["root_bound"] = c.root_bound;
  return j;
}

}  // namespace powersum
