#include "aal/setops.hpp"

#include <algorithm>
#include <cmath>

#include "aal/fft.hpp"
#include "aal/parallel.hpp"

namespace aal {

namespace {

constexpr std::uint64_t kNaiveConvCutoff = 4096;

// gather-style naive convolution: out[x] = sum over supp(f) of f(y) g(x-y);
// each output slot is independent, so the parallel loop is deterministic.
DensityMap naive_convolve_counting(const DensityMap& f, const DensityMap& g) {
  const GroupSpec& grp = f.group();
  std::uint64_t n = grp.size();
  std::vector<std::pair<Index, std::int64_t>> fsupp;
  for (Index y = 0; y < n; ++y)
    if (f.count_at(y)) fsupp.emplace_back(y, f.count_at(y));
  std::vector<std::int64_t> out(n, 0);
  auto gv = g.counts();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t x = 0; x < (std::ptrdiff_t)n; ++x) {
    std::int64_t acc = 0;
    for (const auto& [y, fy] : fsupp) acc += fy * gv[grp.sub((Index)x, y)];
    out[(std::size_t)x] = acc;
  }
  return DensityMap::from_counts(grp, std::move(out));
}

DensityMap fft_convolve_real(const DensityMap& f, const DensityMap& g) {
  const GroupSpec& grp = f.group();
  std::uint64_t n = grp.size();
  std::vector<std::complex<double>> fa(n), ga(n);
  for (Index x = 0; x < n; ++x) {
    fa[x] = f.real_at(x);
    ga[x] = g.real_at(x);
  }
  fft::transform(grp, fa, false);
  fft::transform(grp, ga, false);
  for (Index x = 0; x < n; ++x) fa[x] *= ga[x];
  fft::transform(grp, fa, true);
  std::vector<double> out(n);
  for (Index x = 0; x < n; ++x) out[x] = fa[x].real();
  return DensityMap::from_reals(grp, std::move(out));
}

}  // namespace

GSet sumset(const GSet& a, const GSet& b) {
  a.group().require_same(b.group());
  const GroupSpec& g = a.group();
  if (a.empty() || b.empty()) return GSet(g);
  std::uint64_t n = g.size();
  double direct_cost = (double)a.size() * (double)b.size();
  double conv_cost = 8.0 * (double)n * std::log2((double)n + 2.0);
  if (direct_cost <= conv_cost) {
    GSet out(g);
    auto be = b.elements();
    a.for_each([&](Index x) {
      for (Index y : be) out.add(g.add(x, y));
    });
    return out;
  }
  DensityMap conv = convolve(DensityMap::indicator(a), DensityMap::indicator(b));
  return conv.support();
}

GSet difference_set(const GSet& a, const GSet& b) { return sumset(a, negate_set(b)); }

GSet translate_set(const GSet& a, Index x) {
  const GroupSpec& g = a.group();
  GSet out(g);
  a.for_each([&](Index y) { out.add(g.add(y, x)); });
  return out;
}

GSet negate_set(const GSet& a) {
  const GroupSpec& g = a.group();
  GSet out(g);
  a.for_each([&](Index y) { out.add(g.neg(y)); });
  return out;
}

GSet iterated_sumset(const GSet& x, std::uint64_t n) {
  if (n == 0) fail(Errc::BadThreshold, "iterated sumset needs n >= 1");
  if (x.empty()) return x;
  GSet result(x.group());
  bool have = false;
  GSet power = x;  // 2^i-fold sumset
  std::uint64_t bits = n;
  while (true) {
    if (bits & 1) {
      result = have ? sumset(result, power) : power;
      have = true;
    }
    bits >>= 1;
    if (!bits) break;
    power = sumset(power, power);
  }
  return result;
}

GrowthProfile growth_profile(const GSet& x, std::uint64_t n_max) {
  if (x.empty()) fail(Errc::EmptySet, "growth profile of the empty set");
  GrowthProfile p;
  p.base_size = x.size();
  GSet cur = x;
  p.sizes.push_back(cur.size());
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    cur = sumset(cur, x);
    p.sizes.push_back(cur.size());
  }
  return p;
}

std::uint64_t energy(const GSet& a) {
  if (a.empty()) return 0;
  DensityMap conv = convolve(DensityMap::indicator(a), DensityMap::indicator(negate_set(a)));
  unsigned __int128 acc = 0;
  for (std::int64_t v : conv.counts()) acc += (unsigned __int128)v * (unsigned __int128)v;
  if (acc > (unsigned __int128)UINT64_MAX) fail(Errc::Overflow, "energy exceeds 64 bits");
  return (std::uint64_t)acc;
}

Rat doubling(const GSet& a) {
  if (a.empty()) fail(Errc::EmptySet, "doubling of the empty set");
  GSet aa = sumset(a, a);
  return Rat((std::int64_t)aa.size(), (std::int64_t)a.size());
}

DensityMap convolve(const DensityMap& f, const DensityMap& g) {
  f.group().require_same(g.group());
  const GroupSpec& grp = f.group();
  std::uint64_t n = grp.size();
  if (f.counting() && g.counting()) {
    if (n <= kNaiveConvCutoff) return naive_convolve_counting(f, g);
    // FFT path with rounding verification; exact fallback when the residual
    // is not clearly integral.
    DensityMap approx = fft_convolve_real(f.to_real(), g.to_real());
    std::vector<std::int64_t> out(n);
    double worst = 0.0;
    for (Index x = 0; x < n; ++x) {
      double v = approx.real_at(x);
      double r = std::nearbyint(v);
      worst = std::max(worst, std::abs(v - r));
      out[x] = (std::int64_t)r;
    }
    if (worst >= 0.25) return naive_convolve_counting(f, g);
    return DensityMap::from_counts(grp, std::move(out));
  }
  if (n <= 64) {
    // tiny groups straight from the definition
    std::vector<double> out(n, 0.0);
    for (Index y = 0; y < n; ++y)
      for (Index z = 0; z < n; ++z) out[grp.add(y, z)] += f.real_at(y) * g.real_at(z);
    return DensityMap::from_reals(grp, std::move(out));
  }
  return fft_convolve_real(f.counting() ? f.to_real() : f, g.counting() ? g.to_real() : g);
}

GSet symmetry_set(const GSet& a, const Rat& eta) {
  if (a.empty()) fail(Errc::EmptySet, "symmetry set of the empty set");
  if (eta.num <= 0 || eta > Rat(1)) fail(Errc::BadThreshold, "eta must lie in (0,1]");
  DensityMap conv = convolve(DensityMap::indicator(a), DensityMap::indicator(negate_set(a)));
  GSet out(a.group());
  std::uint64_t n = a.group().size();
  __int128 rhs = (__int128)eta.num * (std::int64_t)a.size();
  for (Index x = 0; x < n; ++x) {
    if ((__int128)conv.count_at(x) * eta.den >= rhs) out.add(x);
  }
  return out;
}

namespace reference {

GSet sumset(const GSet& a, const GSet& b) {
  a.group().require_same(b.group());
  const GroupSpec& g = a.group();
  GSet out(g);
  auto ae = a.elements();
  auto be = b.elements();
  for (Index x : ae)
    for (Index y : be) out.add(g.add(x, y));
  return out;
}

DensityMap convolve_counting(const DensityMap& f, const DensityMap& g) {
  f.group().require_same(g.group());
  const GroupSpec& grp = f.group();
  std::uint64_t n = grp.size();
  std::vector<std::int64_t> out(n, 0);
  for (Index y = 0; y < n; ++y) {
    std::int64_t fy = f.count_at(y);
    if (!fy) continue;
    for (Index z = 0; z < n; ++z) out[grp.add(y, z)] += fy * g.count_at(z);
  }
  return DensityMap::from_counts(grp, std::move(out));
}

std::uint64_t energy_triple_loop(const GSet& a) {
  const GroupSpec& g = a.group();
  auto elems = a.elements();
  std::uint64_t count = 0;
  for (Index x : elems)
    for (Index y : elems) {
      Index xy = g.add(x, y);
      for (Index z : elems)
        if (a.contains(g.sub(xy, z))) ++count;
    }
  return count;
}

}  // namespace reference

}  // namespace aal
