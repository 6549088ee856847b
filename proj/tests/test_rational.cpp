// Copyright 2026 The Edgeplane Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <stdexcept>

#include "edgeplane/rational.hpp"

using edgeplane::Rational;

TEST_CASE("rational parsing") {
  CHECK(Rational::parse("3.25") == Rational(13, 4));
  CHECK(Rational::parse("-0.083") == Rational(-83, 1000));
  CHECK(Rational::parse("981") == Rational(981));
  CHECK(Rational::parse("1117/1083") == Rational(1117, 1083));
  CHECK(Rational::parse("+2.5") == Rational(5, 2));
  CHECK_THROWS_AS(Rational::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
}

TEST_CASE("rational arithmetic stays exact") {
  Rational a = Rational::parse("99.6");
  Rational b = Rational::parse("99.3");
  Rational mean = (a + b) / Rational(2);
  CHECK(mean == Rational(1989, 20));  // exactly 99.45
  CHECK(((mean - Rational(100)) / Rational(100) * Rational(100)) == Rational(-11, 20));
}

TEST_CASE("round_decimals is half away from zero") {
  CHECK(Rational(-11, 20).round_decimals(1) == Rational(-6, 10));  // -0.55 -> -0.6
  CHECK(Rational(11, 20).round_decimals(1) == Rational(6, 10));
  CHECK(Rational(-57, 10000).round_decimals(2) == Rational(-1, 100));  // -0.0057 -> -0.01
  CHECK(Rational(25, 1000).round_decimals(2) == Rational(3, 100));     // 0.025 -> 0.03
  CHECK(Rational(7).round_decimals(1) == Rational(7));
}

TEST_CASE("decimal and shortest formatting") {
  CHECK(Rational(-11, 20).to_decimal(1) == "-0.6");
  CHECK(Rational(7).to_decimal(1) == "7.0");
  CHECK(Rational(1114, 1000).to_decimal(4) == "1.1140");
  CHECK(Rational(981).to_string() == "981");
  CHECK(Rational::parse("1.13").to_string() == "1.13");
  CHECK(Rational(1, 2).to_string() == "0.5");
  CHECK(Rational(1, 3).to_string() == "1/3");
  CHECK(Rational(-3, 8).to_string() == "-0.375");
  CHECK(Rational(0).to_string() == "0");
}

TEST_CASE("ordering") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(2, 4) == Rational(1, 2));
}

TEST_CASE("overflow is detected") {
  Rational big(1000000000000000000LL);
  CHECK_THROWS_AS(big * big, std::overflow_error);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}
