#include "aal/density.hpp"

namespace aal {

DensityMap DensityMap::zeros(const GroupSpec& g, Mode mode) {
  DensityMap f(g, mode);
  if (mode == Mode::Counting)
    f.ivals_.assign(g.size(), 0);
  else
    f.rvals_.assign(g.size(), 0.0);
  return f;
}

DensityMap DensityMap::indicator(const GSet& a) {
  DensityMap f = zeros(a.group(), Mode::Counting);
  a.for_each([&](Index x) { f.ivals_[x] = 1; });
  return f;
}

DensityMap DensityMap::point_mass(const GroupSpec& g, Index x) {
  DensityMap f = zeros(g, Mode::Counting);
  f.ivals_[x] = 1;
  return f;
}

DensityMap DensityMap::normalized(const GSet& a) {
  if (a.empty()) fail(Errc::EmptySet, "mu of the empty set");
  DensityMap f = zeros(a.group(), Mode::Real);
  double w = 1.0 / (double)a.size();
  a.for_each([&](Index x) { f.rvals_[x] = w; });
  return f;
}

DensityMap DensityMap::from_counts(const GroupSpec& g, std::vector<std::int64_t> values) {
  if (values.size() != g.size()) fail(Errc::ParseError, "value array length mismatch");
  DensityMap f(g, Mode::Counting);
  f.ivals_ = std::move(values);
  return f;
}

DensityMap DensityMap::from_reals(const GroupSpec& g, std::vector<double> values) {
  if (values.size() != g.size()) fail(Errc::ParseError, "value array length mismatch");
  DensityMap f(g, Mode::Real);
  f.rvals_ = std::move(values);
  return f;
}

std::int64_t DensityMap::count_sum() const {
  std::int64_t s = 0;
  for (std::int64_t v : ivals_) s += v;
  return s;
}

double DensityMap::real_sum() const {
  if (counting()) return (double)count_sum();
  double s = 0.0;
  for (double v : rvals_) s += v;
  return s;
}

DensityMap DensityMap::to_real() const {
  if (!counting()) return *this;
  DensityMap f(group_, Mode::Real);
  f.rvals_.resize(ivals_.size());
  for (std::size_t i = 0; i < ivals_.size(); ++i) f.rvals_[i] = (double)ivals_[i];
  return f;
}

DensityMap DensityMap::translate(Index x) const {
  DensityMap f(group_, mode_);
  std::uint64_t n = group_.size();
  if (counting()) {
    f.ivals_.resize(n);
    for (Index y = 0; y < n; ++y) f.ivals_[y] = ivals_[group_.add(y, x)];
  } else {
    f.rvals_.resize(n);
    for (Index y = 0; y < n; ++y) f.rvals_[y] = rvals_[group_.add(y, x)];
  }
  return f;
}

GSet DensityMap::support() const {
  GSet s(group_);
  std::uint64_t n = group_.size();
  for (Index x = 0; x < n; ++x) {
    if (counting() ? ivals_[x] != 0 : rvals_[x] != 0.0) s.add(x);
  }
  return s;
}

}  // namespace aal
