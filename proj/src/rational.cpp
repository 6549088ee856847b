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

#include "edgeplane/rational.hpp"

#include <limits>
#include <stdexcept>

namespace edgeplane {

namespace {

__int128 abs128(__int128 v) { return v < 0 ? -v : v; }

__int128 gcd128(__int128 a, __int128 b) {
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min()) {
    throw std::overflow_error("rational overflow");
  }
  return static_cast<std::int64_t>(v);
}

__int128 pow10_128(int k) {
  __int128 p = 1;
  for (int i = 0; i < k; ++i) p *= 10;
  return p;
}

}  // namespace

Rational Rational::make(__int128 n, __int128 d) {
  if (d == 0) throw std::domain_error("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(abs128(n), d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return raw(narrow(n), narrow(d));
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make(n, d); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_ +
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_ -
                            static_cast<__int128>(b.num_) * a.den_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.num_,
                        static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::make(static_cast<__int128>(a.num_) * b.den_,
                        static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  __int128 lhs = static_cast<__int128>(num_) * o.den_;
  __int128 rhs = static_cast<__int128>(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational n = parse(text.substr(0, slash));
    Rational d = parse(text.substr(slash + 1));
    return n / d;
  }
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  __int128 intpart = 0;
  __int128 frac = 0;
  int frac_digits = 0;
  bool any = false;
  for (; i < text.size() && text[i] != '.'; ++i) {
    if (text[i] < '0' || text[i] > '9')
      throw std::invalid_argument("bad rational literal: " + std::string(text));
    intpart = intpart * 10 + (text[i] - '0');
    any = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    for (; i < text.size(); ++i) {
      if (text[i] < '0' || text[i] > '9')
        throw std::invalid_argument("bad rational literal: " + std::string(text));
      frac = frac * 10 + (text[i] - '0');
      ++frac_digits;
      any = true;
      if (frac_digits > 18) throw std::overflow_error("rational literal too precise");
    }
  }
  if (!any) throw std::invalid_argument("bad rational literal: " + std::string(text));
  __int128 scale = pow10_128(frac_digits);
  __int128 n = intpart * scale + frac;
  if (neg) n = -n;
  return make(n, scale);
}

Rational Rational::round_decimals(int places) const {
  __int128 scale = pow10_128(places);
  __int128 n = abs128(static_cast<__int128>(num_)) * scale;
  __int128 q = n / den_;
  __int128 rem = n % den_;
  if (rem * 2 >= den_) ++q;
  if (num_ < 0) q = -q;
  return make(q, scale);
}

std::string Rational::to_decimal(int places) const {
  __int128 scale = pow10_128(places);
  __int128 n = abs128(static_cast<__int128>(num_)) * scale;
  __int128 q = n / den_;
  __int128 rem = n % den_;
  if (rem * 2 >= den_) ++q;
  __int128 whole = q / scale;
  __int128 frac = q % scale;
  std::string out;
  if (num_ < 0 && q != 0) out += '-';
  out += std::to_string(static_cast<long long>(whole));
  if (places > 0) {
    std::string f = std::to_string(static_cast<long long>(frac));
    out += '.';
    out += std::string(places - f.size(), '0');
    out += f;
  }
  return out;
}

std::string Rational::to_string() const {
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int places = twos > fives ? twos : fives;
  if (places == 0) return std::to_string(num_);
  std::string s = to_decimal(places);
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

}  // namespace edgeplane
