// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "powersum/extended.hpp"
#include "powersum/format.hpp"
#include "powersum/summation.hpp"

using namespace powersum;
using namespace std::complex_literals;

TEST_CASE("double formatting round-trips") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "-0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1e-30) == "1e-30");
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const double x = std::bit_cast<double>(rng() & 0x7fefffffffffffffULL);
    CHECK(parse_double(format_double(x)) == x);
  }
  CHECK_THROWS_AS(parse_double("1.0x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
}

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == Complex(1.5));
  CHECK(parse_complex("2i") == 2i);
  CHECK(parse_complex("i") == 1i);
  CHECK(parse_complex("-i") == -1i);
  CHECK(parse_complex("0.3-0.4i") == Complex(0.3, -0.4));
  CHECK(parse_complex(" 1e-3 + 2e+2i ") == Complex(1e-3, 2e2));
  CHECK(parse_complex("-1e-3-i") == Complex(-1e-3, -1));
  CHECK_THROWS_AS(parse_complex("1+"), Error);
  CHECK_THROWS_AS(parse_complex("abc"), Error);
  CHECK(parse_complex_list("1, i,-0.5+0.5i") == std::vector<Complex>{1.0, 1i, Complex(-0.5, 0.5)});
}

TEST_CASE("exact rationals") {
  CHECK(parse_decimal_rational("0.25") == BigRational(1, 4));
  CHECK(parse_decimal_rational("007") == BigRational(7));
  CHECK(parse_decimal_rational("-0.010") == BigRational(-1, 100));
  CHECK(parse_decimal_rational("1.5e-3") == BigRational(3, 2000));
  CHECK(parse_decimal_rational("2E2") == BigRational(200));
  CHECK(parse_decimal_rational("0") == BigRational(0));
  CHECK_THROWS_AS(parse_decimal_rational("1/2"), Error);
  CHECK_THROWS_AS(parse_decimal_rational("."), Error);

  CHECK(exact_rational(0.5) == BigRational(1, 2));
  CHECK(exact_rational(-3.0) == BigRational(-3));
  CHECK(to_double(parse_decimal_rational("0.1")) == 0.1);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(to_double(exact_rational(x)) == x);
  }
}

TEST_CASE("compensated summation") {
  const std::vector<double> xs{1.0, 1e100, 1.0, -1e100};
  CHECK(compensated_sum(xs) == 2.0);
  const std::vector<Complex> zs{1e16, 1.0, -1e16, 1i};
  CHECK(compensated_sum(zs) == Complex(1.0, 1.0));
  CHECK(int_pow(Complex(0.0, 1.0), 4) == Complex(1.0));
  CHECK(int_pow(3.0, 0) == 1.0);
  CHECK(int_pow(2.0, 60) == std::ldexp(1.0, 60));
}

TEST_CASE("precision mode strings") {
  CHECK(PrecisionMode::double_precision().to_string() == "double");
  CHECK(PrecisionMode::extended(60).to_string() == "extended(60)");
  CHECK(PrecisionMode::parse("extended(40)") == PrecisionMode::extended(40));
  CHECK(PrecisionMode::parse("double") == PrecisionMode::double_precision());
  CHECK_THROWS_AS(PrecisionMode::parse("quad"), Error);
}
