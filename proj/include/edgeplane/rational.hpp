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

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace edgeplane {

/// Exact signed rational on int64 numerator / positive int64 denominator.
///
/// Table analytics, latency accumulation, and capacity bookkeeping all run on
/// exact rationals: several golden values sit on decimal rounding boundaries
/// (e.g. -0.55% -> -0.6%) that binary doubles land on the wrong side of.
/// Intermediates go through __int128; a reduced result that does not fit
/// int64 throws std::overflow_error.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t n, std::int64_t d);

  /// Accepts "12", "-3", "3.25", "-0.083", and exact fractions "1117/1083".
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  Rational operator-() const { return raw(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on /0
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  std::strong_ordering operator<=>(const Rational& o) const;
  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }

  /// Round half away from zero to `places` decimal digits.
  Rational round_decimals(int places) const;

  Rational abs() const { return raw(num_ < 0 ? -num_ : num_, den_); }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Fixed-point text with exactly `places` decimals, half-away rounding.
  std::string to_decimal(int places) const;

  /// Shortest exact form: a terminating decimal when the denominator is
  /// 2^a*5^b ("0.55", "981"), otherwise "num/den".
  std::string to_string() const;

 private:
  static Rational raw(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    return r;
  }
  static Rational make(__int128 n, __int128 d);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace edgeplane
