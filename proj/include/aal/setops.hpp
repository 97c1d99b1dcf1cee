#pragma once

#include <cstdint>
#include <vector>

#include "aal/density.hpp"
#include "aal/group.hpp"
#include "aal/rational.hpp"

namespace aal {

// Sumset arithmetic, additive energy, convolution and symmetry sets. Counting
// results are exact regardless of which kernel (direct, naive, FFT+rounding)
// served them, and are bit-identical for every thread count.

GSet sumset(const GSet& a, const GSet& b);
GSet difference_set(const GSet& a, const GSet& b);
GSet translate_set(const GSet& a, Index x);
GSet negate_set(const GSet& a);

/// n-fold sumset by doubling along the binary expansion of n (n >= 1).
GSet iterated_sumset(const GSet& x, std::uint64_t n);

struct GrowthProfile {
  std::uint64_t base_size = 0;
  std::vector<std::uint64_t> sizes;  // sizes[i] = |(i+1)X|
};
GrowthProfile growth_profile(const GSet& x, std::uint64_t n_max);

/// Number of triples (x,y,z) in A^3 with x+y-z in A, via the identity
/// E(A) = sum_s (1_A * 1_{-A})(s)^2. Throws Overflow past 2^64-1.
std::uint64_t energy(const GSet& a);

/// |A+A| / |A| as an exact rational. Throws EmptySet.
Rat doubling(const GSet& a);

/// f * g(x) = sum_{y+z=x} f(y) g(z). Counting inputs produce exact counting
/// output (FFT-accelerated with integer rounding verification, naive
/// fallback); Real mode goes through the FFT.
DensityMap convolve(const DensityMap& f, const DensityMap& g);

/// Sym_eta(A) = { x : (1_A * 1_{-A})(x) >= eta * |A| }, threshold compared
/// exactly by cross-multiplication. eta in (0, 1].
GSet symmetry_set(const GSet& a, const Rat& eta);

namespace reference {

/// Definitional serial kernels used as oracles and benchmark baselines.
GSet sumset(const GSet& a, const GSet& b);
DensityMap convolve_counting(const DensityMap& f, const DensityMap& g);
/// The triple loop over A^3 straight from the definition of E(A).
std::uint64_t energy_triple_loop(const GSet& a);

}  // namespace reference

}  // namespace aal
