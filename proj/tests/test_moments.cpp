// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "powersum/generators.hpp"
#include "powersum/moments.hpp"
#include "powersum/summation.hpp"

using namespace powersum;
using namespace std::complex_literals;

namespace {

Complex brute(const SequenceSpec& seq, unsigned p) {
  const auto v = oracle::brute_moment(seq.head(), p);
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

bool rel_close(Complex a, Complex b, double rel, double floor = 0.0) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + floor;
}

}  // namespace

TEST_CASE("moment examples") {
  CHECK(moment(SequenceSpec::finite({1.0, -1.0, 0.5}), 2) == Complex(2.25));
  const auto unity = SequenceSpec::finite({1.0, 1i, -1.0, -1i});
  CHECK(moment(unity, 3) == Complex(0.0));
  CHECK(moment(unity, 4) == Complex(4.0));
  CHECK(brute(unity, 4) == Complex(4.0));

  SUBCASE("geometric closed form against a 1000-term partial sum") {
    const auto seq = geometric(0.7);
    const Complex closed = moment(seq, 2);
    CHECK(closed.real() == doctest::Approx(0.49 / 0.51).epsilon(1e-15));
    const auto partial = oracle::brute_moment(oracle::geometric_terms(0.7, 0.7, 0, 1000), 2);
    CHECK(closed.real() == doctest::Approx(static_cast<double>(partial.real())).epsilon(1e-15));
  }
  CHECK_THROWS_AS(moment(unity, 0), Error);
}

TEST_CASE("moment matches brute force on random sequences") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto seq = finite_random(seed);
    for (unsigned p : {1u, 2u, 7u, 31u, 100u}) CHECK(rel_close(moment(seq, p), brute(seq, p), 1e-12, 1e-15));
  }
}

TEST_CASE("tail moments agree with partial sums") {
  const Complex coeff = 0.6 - 0.3i, ratio = -0.4 + 0.5i;
  const auto seq = SequenceSpec::tail({0.2i, 0.9}, coeff, ratio, 3);
  auto terms = oracle::geometric_terms(coeff, ratio, 3, 1500);
  terms.insert(terms.begin(), {0.2i, 0.9, 0.0});
  for (unsigned p = 1; p <= 12; ++p) {
    const auto b = oracle::brute_moment(terms, p);
    CHECK(rel_close(moment(seq, p), {double(b.real()), double(b.imag())}, 1e-13, 1e-16));
  }
}

TEST_CASE("tail denominator escalation") {
  // |1 - ratio^p| < 1e-14 for p = 1: the double closed form would lose every digit.
  const double r = 1.0 - 0x1p-50;
  const auto seq = SequenceSpec::tail({}, 1e-12, r, 0);
  const Complex m = moment(seq, 1);
  // sum_n 1e-12 r^n = 1e-12 / (1 - r) = 1e-12 * 2^50
  CHECK(m.real() == doctest::Approx(1e-12 * 0x1p50).epsilon(1e-14));
  CHECK(moment(seq, 1, PrecisionMode::extended(40)).real() == doctest::Approx(m.real()).epsilon(1e-15));
}

TEST_CASE("apriori_bound") {
  SequenceStats st;
  st.max_modulus = 1.0;
  st.lq_norm_qth_power = 3.5;
  for (unsigned p = 2; p < 40; ++p) CHECK(apriori_bound(st, p, 2) == 3.5);
  st.max_modulus = 0.5;
  st.lq_norm_qth_power = 1.0;
  CHECK(apriori_bound(st, 3, 1) == 0.25);
  CHECK_THROWS_WITH_AS(apriori_bound(st, 1, 2), "bound requires p >= q", Error);

  const auto unity = SequenceSpec::finite({1.0, 1i, -1.0, -1i});
  CHECK(std::abs(moment(unity, 4)) <= apriori_bound(lq_stats(unity, 1), 4, 1));
}

TEST_CASE("moment_table") {
  const auto t = moment_table(SequenceSpec::finite({0.5}), 3);
  CHECK(t.normalization_scale == 0.5);
  CHECK(t.p_max == 3);
  for (const auto& e : t.entries) CHECK(e.value == Complex(1.0));
  CHECK(t.raw_moment(3) == Complex(0.125));

  CHECK_THROWS_AS(moment_table(SequenceSpec::finite({0.0, 0.0}), 4), Error);

  const auto unity = moment_table(SequenceSpec::finite({1.0, 1i, -1.0, -1i}), 8);
  const std::vector<double> expect{0, 0, 0, 4, 0, 0, 0, 4};
  for (unsigned p = 1; p <= 8; ++p) {
    CHECK(unity.entries[p - 1].p == p);
    CHECK(unity.entries[p - 1].abs == expect[p - 1]);
  }
}

TEST_CASE("moment_table invariants") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto seq = finite_random(seed).with_q(1 + seed % 3);
    const auto t = moment_table(seq, 64);
    for (const auto& e : t.entries) {
      CHECK(e.abs == std::abs(e.value));
      if (e.p >= seq.q()) CHECK(e.abs <= e.bound * (1 + 1e-12));
      CHECK(rel_close(t.raw_moment(e.p), moment(seq, e.p), 1e-12, 1e-300));
    }
  }
}

TEST_CASE("reduction identity M_p(z^q) = M_{pq}(z)") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto seq = finite_random(seed);
    for (unsigned q : {2u, 3u}) {
      const auto v = power_map(seq, q);
      for (unsigned p = 1; p <= 40; ++p) CHECK(rel_close(moment(v, p), moment(seq, p * q), 1e-12, 1e-300));
    }
  }
  const auto tail = SequenceSpec::tail({0.3i}, 0.5, 0.8i, 2);
  for (unsigned p = 1; p <= 20; ++p) CHECK(rel_close(moment(power_map(tail, 3), p), moment(tail, 3 * p), 1e-12));
}

TEST_CASE("scaling M_p(c z) = c^p M_p(z)") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mod(0.5, 2.0), arg(0.0, 6.283185307179586);
  for (int trial = 0; trial < 20; ++trial) {
    const auto seq = finite_random(100 + trial);
    const Complex c = std::polar(mod(rng), arg(rng));
    for (unsigned p : {1u, 3u, 10u, 25u}) {
      const Complex scaled = moment(seq.scaled(c), p);
      const Complex expect = int_pow(c, p) * moment(seq, p);
      // Cancellation can shrink |M_p|; measure against the bound on the terms.
      const double terms = int_pow(std::abs(c), p) * lq_stats(seq, p).lq_norm_qth_power;
      CHECK(std::abs(scaled - expect) <= 1e-12 * std::max(std::abs(expect), terms));
    }
  }
}

TEST_CASE("extended precision") {
  const auto mode = PrecisionMode::extended(60);
  SUBCASE("agrees with double on well-conditioned input") {
    const auto seq = finite_random(7);
    for (unsigned p = 1; p <= 30; ++p) CHECK(rel_close(moment(seq, p, mode), moment(seq, p), 1e-14, 1e-300));
  }
  SUBCASE("certifies exact zeros for exactly representable roots of unity") {
    for (unsigned m : {2u, 4u}) {
      const auto t = moment_table(roots_of_unity(m), 64, mode);
      for (const auto& e : t.entries) {
        if (e.p % m == 0)
          CHECK(e.abs == doctest::Approx(double(m)).epsilon(1e-15));
        else
          CHECK(e.abs < 1e-30);
      }
      CHECK(t.precision == mode);
    }
  }
  SUBCASE("tail in extended mode") {
    const auto seq = geometric(0.7);
    CHECK(moment(seq, 5, mode).real() == doctest::Approx(moment(seq, 5).real()).epsilon(1e-15));
  }
}

TEST_CASE("serial and parallel tables are bit-identical") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto seq = finite_random(seed, 50);
    const auto a = moment_table(seq, 300);
    const auto b = moment_table_serial(seq, 300);
    for (unsigned i = 0; i < 300; ++i) {
      CHECK(a.entries[i].value == b.entries[i].value);
      CHECK(a.entries[i].bound == b.entries[i].bound);
    }
  }
}

TEST_CASE("moment CSV") {
  const auto t = moment_table(SequenceSpec::tail({0.1 + 0.2i}, 0.5, 0.3i, 2, 2), 12, PrecisionMode::extended(30));
  const std::string csv = write_moment_csv(t);
  CHECK(csv.rfind("# scale=", 0) == 0);
  CHECK(csv.find("precision=extended(30)") != std::string::npos);
  CHECK(csv.find("\np,re,im,abs,bound\n") != std::string::npos);
  const auto back = read_moment_csv(csv);
  CHECK(back.p_max == 12);
  CHECK(back.q == 2);
  CHECK(back.normalization_scale == t.normalization_scale);
  CHECK(back.lq_norm_qth_power == t.lq_norm_qth_power);
  CHECK(back.precision == t.precision);
  for (unsigned i = 0; i < 12; ++i) {
    CHECK(back.entries[i].value == t.entries[i].value);
    CHECK(back.entries[i].bound == t.entries[i].bound);
  }
  CHECK(write_moment_csv(back) == csv);

  CHECK_THROWS_AS(read_moment_csv("p,re,im,abs,bound\n1,0,0,0,0\n"), Error);
  CHECK_THROWS_AS(read_moment_csv("# scale=1\np,re,im\n"), Error);
  CHECK_THROWS_AS(read_moment_csv("# scale=1\np,re,im,abs,bound\n2,0,0,0,0\n"), Error);
}
