#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "aal/error.hpp"

namespace aal {

/// Exact rational over 64-bit integers, always normalized (den > 0, gcd 1).
/// Comparisons cross-multiply in 128 bits so they never round; arithmetic
/// throws Overflow instead of wrapping. Covers every ratio the workbench
/// produces (set sizes and convolution counts stay far below 2^40).
struct Rat {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rat() = default;
  Rat(std::int64_t n) : num(n), den(1) {}
  Rat(std::int64_t n, std::int64_t d) { assign(n, d); }

  /// Accepts "7", "-3/4" and plain decimals like "0.52".
  static Rat parse(std::string_view text);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const;

  friend Rat operator+(Rat a, Rat b) {
    return from128((__int128)a.num * b.den + (__int128)b.num * a.den, (__int128)a.den * b.den);
  }
  friend Rat operator-(Rat a, Rat b) {
    return from128((__int128)a.num * b.den - (__int128)b.num * a.den, (__int128)a.den * b.den);
  }
  friend Rat operator*(Rat a, Rat b) { return from128((__int128)a.num * b.num, (__int128)a.den * b.den); }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) fail(Errc::Overflow, "rational division by zero");
    return from128((__int128)a.num * b.den, (__int128)a.den * b.num);
  }

  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

private:
  void assign(std::int64_t n, std::int64_t d);
  static Rat from128(__int128 n, __int128 d);
};

}  // namespace aal
