#include "aal/group.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace aal {

// --- GroupSpec ---------------------------------------------------------------

GroupSpec::GroupSpec(std::vector<std::uint32_t> orders, std::uint64_t cap) {
  if (orders.empty()) fail(Errc::ParseError, "group needs at least one cyclic factor");
  for (std::uint32_t n : orders)
    if (n < 1) fail(Errc::ParseError, "cyclic order must be >= 1");
  orders.erase(std::remove(orders.begin(), orders.end(), 1u), orders.end());
  if (orders.empty()) orders.push_back(1);
  orders_ = std::move(orders);

  size_ = 1;
  exponent_ = 1;
  for (std::uint32_t n : orders_) {
    if (size_ > cap / n) fail(Errc::CapExceeded, "group order exceeds enumeration cap");
    size_ *= n;
    exponent_ = std::lcm<std::uint64_t>(exponent_, n);
  }
  strides_.assign(orders_.size(), 1);
  for (std::size_t i = orders_.size(); i-- > 1;) strides_[i - 1] = strides_[i] * orders_[i];
  phase_mult_.resize(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) phase_mult_[i] = exponent_ / orders_[i];
}

GroupSpec GroupSpec::parse(std::string_view text, std::uint64_t cap) {
  std::string s;
  for (char c : text)
    if (!std::isspace((unsigned char)c)) s.push_back((char)std::tolower((unsigned char)c));
  if (s.empty()) fail(Errc::ParseError, "empty group spec");
  std::vector<std::uint32_t> orders;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != 'z') fail(Errc::ParseError, "expected 'Z' in group spec '" + std::string(text) + "'");
    ++pos;
    std::uint32_t n = 0;
    auto r = std::from_chars(s.data() + pos, s.data() + s.size(), n);
    if (r.ec != std::errc{} || n == 0) fail(Errc::ParseError, "bad cyclic order in '" + std::string(text) + "'");
    pos = (std::size_t)(r.ptr - s.data());
    std::uint32_t rep = 1;
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      auto r2 = std::from_chars(s.data() + pos, s.data() + s.size(), rep);
      if (r2.ec != std::errc{} || rep == 0) fail(Errc::ParseError, "bad exponent in '" + std::string(text) + "'");
      pos = (std::size_t)(r2.ptr - s.data());
    }
    if (rep > 64) fail(Errc::CapExceeded, "too many repeated factors");
    for (std::uint32_t i = 0; i < rep; ++i) orders.push_back(n);
    if (pos < s.size()) {
      if (s[pos] != 'x') fail(Errc::ParseError, "expected 'x' between factors");
      ++pos;
    }
  }
  return GroupSpec(std::move(orders), cap);
}

std::string GroupSpec::str() const {
  std::string out;
  std::size_t i = 0;
  while (i < orders_.size()) {
    std::size_t j = i;
    while (j < orders_.size() && orders_[j] == orders_[i]) ++j;
    if (!out.empty()) out += "x";
    out += "Z" + std::to_string(orders_[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

Index GroupSpec::add(Index x, Index y) const {
  Index out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t n = orders_[i];
    std::uint64_t cx = (x / strides_[i]) % n;
    std::uint64_t cy = (y / strides_[i]) % n;
    std::uint64_t c = cx + cy;
    if (c >= n) c -= n;
    out += c * strides_[i];
  }
  return out;
}

Index GroupSpec::neg(Index x) const {
  Index out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t n = orders_[i];
    std::uint64_t cx = (x / strides_[i]) % n;
    out += (cx ? n - cx : 0) * strides_[i];
  }
  return out;
}

Index GroupSpec::mul(Index x, std::int64_t t) const {
  Index out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::int64_t n = orders_[i];
    std::int64_t cx = (std::int64_t)((x / strides_[i]) % (std::uint64_t)n);
    __int128 c = (__int128)cx * t % n;
    if (c < 0) c += n;
    out += (std::uint64_t)c * strides_[i];
  }
  return out;
}

std::vector<std::uint32_t> GroupSpec::coords(Index x) const {
  std::vector<std::uint32_t> c(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) c[i] = (std::uint32_t)((x / strides_[i]) % orders_[i]);
  return c;
}

Index GroupSpec::index_of(std::span<const std::uint32_t> coords) const {
  if (coords.size() != orders_.size()) fail(Errc::ParseError, "coordinate arity mismatch");
  Index out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    if (coords[i] >= orders_[i]) fail(Errc::ParseError, "coordinate out of range");
    out += (std::uint64_t)coords[i] * strides_[i];
  }
  return out;
}

Index GroupSpec::index_of_signed(std::span<const std::int64_t> coords) const {
  if (coords.size() != orders_.size()) fail(Errc::ParseError, "coordinate arity mismatch");
  Index out = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::int64_t n = orders_[i];
    std::int64_t c = coords[i] % n;
    if (c < 0) c += n;
    out += (std::uint64_t)c * strides_[i];
  }
  return out;
}

std::uint64_t GroupSpec::char_phase(Index t, Index x) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    std::uint64_t n = orders_[i];
    std::uint64_t ti = (t / strides_[i]) % n;
    std::uint64_t xi = (x / strides_[i]) % n;
    std::uint64_t m = ti * xi % n;  // < n <= 2^24, product fits easily
    acc += m * phase_mult_[i];
    if (acc >= exponent_) acc -= exponent_ * (acc / exponent_);
  }
  return acc % exponent_;
}

std::complex<double> GroupSpec::char_value(Index t, Index x) const {
  std::uint64_t a = char_phase(t, x);
  if (a == 0) return {1.0, 0.0};
  double theta = 2.0 * std::numbers::pi * (double)a / (double)exponent_;
  return std::polar(1.0, theta);
}

double GroupSpec::char_dist_to_one(Index t, Index x) const {
  std::uint64_t a = char_phase(t, x);
  std::uint64_t m = std::min(a, exponent_ - a);  // better conditioned near a ~ L
  return 2.0 * std::sin(std::numbers::pi * (double)m / (double)exponent_);
}

void GroupSpec::require_same(const GroupSpec& other) const {
  if (*this != other) fail(Errc::GroupMismatch, "operands live in different groups");
}

// --- GSet --------------------------------------------------------------------

GSet::GSet(GroupSpec group) : group_(std::move(group)) {
  bits_.assign((group_.size() + 63) / 64, 0);
}

GSet GSet::full_set(const GroupSpec& g) {
  GSet s(g);
  std::uint64_t n = g.size();
  for (std::size_t w = 0; w < s.bits_.size(); ++w) s.bits_[w] = ~0ull;
  if (n % 64) s.bits_.back() = (~0ull) >> (64 - n % 64);
  s.size_ = n;
  return s;
}

GSet GSet::singleton(const GroupSpec& g, Index x) {
  GSet s(g);
  s.add(x);
  return s;
}

GSet GSet::of(const GroupSpec& g, std::initializer_list<std::int64_t> single_coords) {
  GSet s(g);
  for (std::int64_t v : single_coords) {
    std::int64_t c[1] = {v};
    if (g.rank() != 1) fail(Errc::ParseError, "GSet::of needs a single-factor group");
    s.add(g.index_of_signed(c));
  }
  return s;
}

void GSet::add(Index x) {
  std::uint64_t& w = bits_[x >> 6];
  std::uint64_t m = 1ull << (x & 63);
  if (!(w & m)) {
    w |= m;
    ++size_;
  }
}

void GSet::remove(Index x) {
  std::uint64_t& w = bits_[x >> 6];
  std::uint64_t m = 1ull << (x & 63);
  if (w & m) {
    w &= ~m;
    --size_;
  }
}

std::vector<Index> GSet::elements() const {
  std::vector<Index> out;
  out.reserve(size_);
  for_each([&](Index x) { out.push_back(x); });
  return out;
}

GSet& GSet::operator|=(const GSet& o) {
  group_.require_same(o.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] |= o.bits_[w];
  recount();
  return *this;
}

GSet& GSet::operator&=(const GSet& o) {
  group_.require_same(o.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] &= o.bits_[w];
  recount();
  return *this;
}

GSet& GSet::operator^=(const GSet& o) {
  group_.require_same(o.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) bits_[w] ^= o.bits_[w];
  recount();
  return *this;
}

GSet GSet::complement() const {
  GSet out(group_);
  for (std::size_t w = 0; w < bits_.size(); ++w) out.bits_[w] = ~bits_[w];
  std::uint64_t n = group_.size();
  if (n % 64) out.bits_.back() &= (~0ull) >> (64 - n % 64);
  out.size_ = n - size_;
  return out;
}

bool GSet::is_subset_of(const GSet& o) const {
  group_.require_same(o.group_);
  for (std::size_t w = 0; w < bits_.size(); ++w)
    if (bits_[w] & ~o.bits_[w]) return false;
  return true;
}

void GSet::recount() {
  std::uint64_t n = 0;
  for (std::uint64_t w : bits_) n += (std::uint64_t)std::popcount(w);
  size_ = n;
}

// --- parsing / formatting ----------------------------------------------------

namespace {

void skip_ws(std::string_view s, std::size_t& pos) {
  while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
}

std::int64_t parse_int(std::string_view s, std::size_t& pos) {
  skip_ws(s, pos);
  std::int64_t v = 0;
  auto r = std::from_chars(s.data() + pos, s.data() + s.size(), v);
  if (r.ec != std::errc{}) fail(Errc::ParseError, "expected integer in set literal");
  pos = (std::size_t)(r.ptr - s.data());
  return v;
}

}  // namespace

GSet GSet::parse(const GroupSpec& g, std::string_view text) {
  GSet out(g);
  std::size_t pos = 0;
  skip_ws(text, pos);
  if (pos >= text.size() || text[pos] != '{') fail(Errc::ParseError, "set literal must start with '{'");
  ++pos;
  skip_ws(text, pos);
  if (pos < text.size() && text[pos] == '}') return out;  // empty set
  while (true) {
    skip_ws(text, pos);
    if (pos >= text.size()) fail(Errc::ParseError, "unterminated set literal");
    if (text[pos] == '(') {
      ++pos;
      std::vector<std::int64_t> coords;
      while (true) {
        coords.push_back(parse_int(text, pos));
        skip_ws(text, pos);
        if (pos < text.size() && text[pos] == ',') {
          ++pos;
          continue;
        }
        break;
      }
      skip_ws(text, pos);
      if (pos >= text.size() || text[pos] != ')') fail(Errc::ParseError, "expected ')' in set literal");
      ++pos;
      out.add(g.index_of_signed(coords));
    } else {
      if (g.rank() != 1) fail(Errc::ParseError, "bare integers need a single-factor group");
      std::int64_t a = parse_int(text, pos);
      skip_ws(text, pos);
      if (pos + 1 < text.size() && text[pos] == '.' && text[pos + 1] == '.') {
        pos += 2;
        std::int64_t b = parse_int(text, pos);
        if (b < a) fail(Errc::ParseError, "descending range in set literal");
        if (b - a >= (std::int64_t)g.size())
          fail(Errc::ParseError, "range longer than the group");
        for (std::int64_t v = a; v <= b; ++v) {
          std::int64_t c[1] = {v};
          out.add(g.index_of_signed(c));
        }
      } else {
        std::int64_t c[1] = {a};
        out.add(g.index_of_signed(c));
      }
    }
    skip_ws(text, pos);
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < text.size() && text[pos] == '}') break;
    fail(Errc::ParseError, "expected ',' or '}' in set literal");
  }
  return out;
}

std::string GSet::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for_each([&](Index x) {
    if (!first) os << ',';
    first = false;
    auto c = group_.coords(x);
    if (c.size() == 1) {
      os << c[0];
    } else {
      os << '(';
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ',';
        os << c[i];
      }
      os << ')';
    }
  });
  os << '}';
  return os.str();
}

// --- free operations ----------------------------------------------------------

std::vector<GroupElement> enumerate_elements(const GroupSpec& g) {
  std::vector<GroupElement> out;
  out.reserve(g.size());
  for (Index x = 0; x < g.size(); ++x) out.push_back(GroupElement{g.coords(x)});
  return out;
}

GroupElement add(const GroupSpec& g, const GroupElement& x, const GroupElement& y) {
  return GroupElement{g.coords(g.add(g.index_of(x.coords), g.index_of(y.coords)))};
}

GroupElement neg(const GroupSpec& g, const GroupElement& x) {
  return GroupElement{g.coords(g.neg(g.index_of(x.coords)))};
}

std::complex<double> char_value(const GroupSpec& g, const Character& gamma, const GroupElement& x) {
  return g.char_value(g.index_of(gamma.dual_coords), g.index_of(x.coords));
}

GSet subgroup_generated(const GSet& gens) {
  const GroupSpec& g = gens.group();
  GSet out(g);
  out.add(0);
  std::vector<Index> frontier{0};
  std::vector<Index> step;
  gens.for_each([&](Index x) {
    step.push_back(x);
    step.push_back(g.neg(x));
  });
  while (!frontier.empty()) {
    std::vector<Index> next;
    for (Index x : frontier) {
      for (Index s : step) {
        Index y = g.add(x, s);
        if (!out.contains(y)) {
          out.add(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

CosetCheck is_coset(const GSet& a) {
  const GroupSpec& g = a.group();
  CosetCheck res{false, 0, GSet(g)};
  if (a.empty()) return res;
  auto elems = a.elements();
  Index a0 = elems[0];
  GSet h(g);
  for (Index x : elems) h.add(g.sub(x, a0));
  // h contains 0; a finite nonempty subset closed under addition is a subgroup
  auto helems = h.elements();
  for (Index x : helems)
    for (Index y : helems)
      if (!h.contains(g.add(x, y))) return res;
  res.is_coset = true;
  res.translate = a0;
  res.subgroup = std::move(h);
  return res;
}

}  // namespace aal
