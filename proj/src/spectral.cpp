#include "aal/spectral.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "aal/fft.hpp"
#include "aal/parallel.hpp"

namespace aal {

namespace {
constexpr double kLspecTol = 1e-9;
constexpr double kBohrTol = 1e-12;
}  // namespace

Spectrum fourier(const DensityMap& f) {
  const GroupSpec& g = f.group();
  std::vector<std::complex<double>> data(g.size());
  for (Index x = 0; x < g.size(); ++x) data[x] = f.real_at(x);
  fft::transform(g, data, false);
  return Spectrum{g, std::move(data)};
}

DensityMap inverse_fourier(const Spectrum& s) {
  std::vector<std::complex<double>> data = s.coefficients;
  fft::transform(s.group, data, true);
  std::vector<double> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = data[i].real();
  return DensityMap::from_reals(s.group, std::move(out));
}

std::string Spectrum::to_csv() const {
  std::ostringstream os;
  std::size_t k = group.rank();
  for (std::size_t i = 0; i < k; ++i) os << "t" << i << ",";
  os << "re,im,mag_sq\n";
  char buf[64];
  for (Index t = 0; t < group.size(); ++t) {
    auto c = group.coords(t);
    for (std::size_t i = 0; i < k; ++i) os << c[i] << ",";
    auto z = coefficients[t];
    auto put = [&](double v, char sep) {
      std::snprintf(buf, sizeof buf, "%.17g%c", v, sep);
      os << buf;
    };
    put(z.real(), ',');
    put(z.imag(), ',');
    put(std::norm(z), '\n');
  }
  return os.str();
}

CharSet large_spectrum(const GSet& a, double eps) {
  if (a.empty()) fail(Errc::EmptySet, "large spectrum of the empty set");
  if (!(eps > 0.0) || eps > 1.0) fail(Errc::BadEps, "eps must lie in (0,1]");
  const GroupSpec& g = a.group();
  Spectrum hat = fourier(DensityMap::indicator(a));
  double asq = (double)a.size() * (double)a.size();
  double bound = eps * eps + kLspecTol;
  std::uint64_t n = g.size();
  std::vector<char> in(n, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t t = 0; t < (std::ptrdiff_t)n; ++t) {
    double val = 2.0 * (1.0 - std::norm(hat.coefficients[(std::size_t)t]) / asq);
    in[(std::size_t)t] = val <= bound ? 1 : 0;
  }
  CharSet out(g);
  for (Index t = 0; t < n; ++t) {
    // negation closure resolved toward inclusion
    if (in[t] || in[g.neg(t)]) out.add(t);
  }
  return out;
}

double lspec_norm_sq_definitional(const GSet& a, Index gamma) {
  const GroupSpec& g = a.group();
  DensityMap mu = DensityMap::normalized(a);
  DensityMap conv = convolve(mu, DensityMap::normalized(negate_set(a)));
  double acc = 0.0;
  for (Index x = 0; x < g.size(); ++x) {
    std::complex<double> d = 1.0 - g.char_value(gamma, x);
    acc += conv.real_at(x) * std::norm(d);
  }
  return acc;
}

bool bohr_accepts(const GroupSpec& g, Index gamma, Index x, double delta) {
  return g.char_dist_to_one(gamma, x) <= delta + kBohrTol;
}

GSet bohr_set(const BohrSpec& spec) {
  if (!(spec.delta > 0.0) || spec.delta > 2.0) fail(Errc::BadDelta, "delta must lie in (0,2]");
  const GroupSpec& g = spec.gamma_set.group();
  GSet out(g);
  auto gammas = spec.gamma_set.elements();
  std::uint64_t n = g.size();
  auto words = out.mutable_words();
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
  for (std::ptrdiff_t w = 0; w < (std::ptrdiff_t)words.size(); ++w) {
    std::uint64_t acc = 0;
    for (unsigned b = 0; b < 64; ++b) {
      Index x = (Index)w * 64 + b;
      if (x >= n) break;
      bool ok = true;
      for (Index t : gammas) {
        if (!bohr_accepts(g, t, x, spec.delta)) {
          ok = false;
          break;
        }
      }
      if (ok) acc |= 1ull << b;
    }
    words[(std::size_t)w] = acc;
  }
  out.recount();
  return out;
}

ContainmentCheck check_prop_containment(const GSet& x, std::uint64_t l, double eps) {
  if (x.empty()) fail(Errc::EmptySet, "containment check needs a nonempty set");
  if (l < 1) fail(Errc::BadThreshold, "l must be >= 1");
  GSet lx = iterated_sumset(x, l);
  GSet lx_prev = l == 1 ? GSet::singleton(x.group(), 0) : iterated_sumset(x, l - 1);
  ContainmentCheck res;
  res.growth_ratio = Rat((std::int64_t)lx.size(), (std::int64_t)lx_prev.size());
  double delta = 2.0 * eps * std::sqrt(2.0 * res.growth_ratio.value());
  if (delta > 2.0) delta = 2.0;  // |gamma - 1| <= 2 always; larger bounds are vacuous
  res.delta = delta;
  CharSet spec = large_spectrum(lx, eps);
  res.lspec_size = spec.size();
  GSet bohr = bohr_set(BohrSpec{spec, delta});
  res.bohr_size = bohr.size();
  GSet diff = difference_set(x, x);
  res.passed = true;
  diff.for_each([&](Index d) {
    if (res.passed && !bohr.contains(d)) {
      res.passed = false;
      res.violation = d;
    }
  });
  return res;
}

BohrSizeReport measure_bohr_size(const GSet& x, double eps, std::uint64_t growth_n_max) {
  if (x.empty()) fail(Errc::EmptySet, "bohr size of the empty set");
  BohrSizeReport rep;
  CharSet spec = large_spectrum(x, eps);
  rep.lspec_size = spec.size();
  GSet bohr = bohr_set(BohrSpec{spec, 1.0 / (2.0 * std::numbers::pi)});
  rep.bohr_size = bohr.size();
  rep.ratio = (double)bohr.size() / (double)x.size();
  auto prof = growth_profile(x, growth_n_max);
  double d = 0.0;
  for (std::uint64_t n = 2; n <= growth_n_max; ++n) {
    double dn = std::log((double)prof.sizes[n - 1] / (double)prof.base_size) / std::log((double)n);
    d = std::max(d, dn);
  }
  rep.growth_order = d;
  return rep;
}

}  // namespace aal
