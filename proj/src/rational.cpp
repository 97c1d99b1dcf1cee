#include "aal/rational.hpp"

#include <charconv>
#include <cstdlib>

namespace aal {

void Rat::assign(std::int64_t n, std::int64_t d) {
  if (d == 0) fail(Errc::Overflow, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  std::int64_t g = std::gcd(n < 0 ? -n : n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = n;
  den = d;
}

Rat Rat::from128(__int128 n, __int128 d) {
  if (d == 0) fail(Errc::Overflow, "rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 a = n < 0 ? -n : n;
  __int128 b = d;
  while (b) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    n /= a;
    d /= a;
  }
  constexpr __int128 lim = INT64_MAX;
  if (n > lim || n < -lim || d > lim) fail(Errc::Overflow, "rational out of 64-bit range");
  Rat r;
  r.num = (std::int64_t)n;
  r.den = (std::int64_t)d;
  return r;
}

Rat Rat::parse(std::string_view text) {
  auto bad = [&] { fail(Errc::ParseError, "bad rational '" + std::string(text) + "'"); };
  std::size_t slash = text.find('/');
  if (slash != std::string_view::npos) {
    std::int64_t n = 0, d = 0;
    auto r1 = std::from_chars(text.data(), text.data() + slash, n);
    auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), d);
    if (r1.ec != std::errc{} || r2.ec != std::errc{} || r2.ptr != text.data() + text.size()) bad();
    return Rat(n, d);
  }
  std::size_t dot = text.find('.');
  if (dot != std::string_view::npos) {
    bool negative = !text.empty() && text[0] == '-';
    std::string_view ipart = text.substr(0, dot);
    std::string_view fpart = text.substr(dot + 1);
    if (fpart.empty() || fpart.size() > 17) bad();
    std::int64_t ip = 0;
    if (!(ipart.empty() || ipart == "-" || ipart == "+")) {
      auto r = std::from_chars(ipart.data(), ipart.data() + ipart.size(), ip);
      if (r.ec != std::errc{} || r.ptr != ipart.data() + ipart.size()) bad();
    }
    std::uint64_t fp = 0;
    auto r = std::from_chars(fpart.data(), fpart.data() + fpart.size(), fp);
    if (r.ec != std::errc{} || r.ptr != fpart.data() + fpart.size()) bad();
    __int128 den = 1;
    for (std::size_t i = 0; i < fpart.size(); ++i) den *= 10;
    __int128 n = (__int128)(ip < 0 ? -ip : ip) * den + fp;
    if (negative) n = -n;
    else if (ip < 0) n = -n;  // unreachable; kept for clarity of sign handling
    return from128(n, den);
  }
  std::int64_t n = 0;
  auto r = std::from_chars(text.data(), text.data() + text.size(), n);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) bad();
  return Rat(n);
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

}  // namespace aal
