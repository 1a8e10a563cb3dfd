// SPDX-License-Identifier: Apache-2.0
#include "hcspec/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

#include "hcspec/errors.hpp"

namespace hcs {

namespace {

using wide = __int128;

wide gcd_wide(wide a, wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(wide num, wide den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  wide g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr wide lim = std::numeric_limits<std::int64_t>::max();
  if (num > lim || -num > lim || den > lim) throw InvalidArgument("rational overflow");
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

Rational operator+(Rational a, Rational b) {
  return make(wide(a.num_) * b.den_ + wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}
Rational operator-(Rational a, Rational b) {
  return make(wide(a.num_) * b.den_ - wide(b.num_) * a.den_, wide(a.den_) * b.den_);
}
Rational operator*(Rational a, Rational b) {
  return make(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
}
Rational operator/(Rational a, Rational b) {
  return make(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  wide l = wide(a.num_) * b.den_;
  wide r = wide(b.num_) * a.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::to_string() const {
  // Terminating iff den has only factors 2 and 5.
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  if (d != 1) return std::to_string(num_) + "/" + std::to_string(den_);
  int digits = std::max(twos, fives);
  if (digits > 30) return std::to_string(num_) + "/" + std::to_string(den_);
  wide scaled = wide(num_);
  wide factor = 1;
  for (int i = 0; i < digits; ++i) factor *= 10;
  scaled = scaled * factor / den_;
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s;
  do {
    s.insert(s.begin(), char('0' + int(scaled % 10)));
    scaled /= 10;
  } while (scaled > 0);
  if (digits > 0) {
    while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
    s.insert(s.end() - digits, '.');
  }
  return neg ? "-" + s : s;
}

std::optional<Rational> Rational::parse(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      std::size_t p1 = 0, p2 = 0;
      long long n = std::stoll(text.substr(0, slash), &p1);
      long long d = std::stoll(text.substr(slash + 1), &p2);
      if (p1 != slash || p2 != text.size() - slash - 1 || d == 0) return std::nullopt;
      return Rational(n, d);
    }
    std::size_t i = 0;
    bool neg = false;
    if (text[i] == '-' || text[i] == '+') {
      neg = text[i] == '-';
      ++i;
    }
    wide num = 0, den = 1;
    bool seen_dot = false, seen_digit = false;
    for (; i < text.size(); ++i) {
      char c = text[i];
      if (c == '.' && !seen_dot) {
        seen_dot = true;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        seen_digit = true;
        num = num * 10 + (c - '0');
        if (seen_dot) den *= 10;
        if (num > wide(1) << 100 || den > wide(1) << 100) return std::nullopt;
      } else {
        return std::nullopt;
      }
    }
    if (!seen_digit) return std::nullopt;
    return make(neg ? -num : num, den);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace hcs
