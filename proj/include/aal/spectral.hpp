#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aal/density.hpp"
#include "aal/group.hpp"
#include "aal/rational.hpp"
#include "aal/setops.hpp"

namespace aal {

/// Fourier coefficients indexed by dual coordinates (the dual group shares
/// the mixed-radix index space of G).
struct Spectrum {
  GroupSpec group;
  std::vector<std::complex<double>> coefficients;

  /// CSV rows: t-coords, re, im, |.|^2.
  std::string to_csv() const;
};

/// Bohr(Gamma, delta) = { x : |gamma(x) - 1| <= delta for all gamma in Gamma }.
struct BohrSpec {
  CharSet gamma_set;
  double delta;  // in (0, 2]
};

/// f_hat(gamma) = sum_x f(x) conj(gamma(x)).
Spectrum fourier(const DensityMap& f);
DensityMap inverse_fourier(const Spectrum& s);

/// LSpec(A, eps) = { gamma : ||1 - gamma||_{L^2(mu_A * mu_-A)} <= eps }.
/// Membership is decided through the closed form
///   ||1 - gamma||^2 = 2 (1 - |1_A_hat(gamma)|^2 / |A|^2),
/// compared against eps^2 with 1e-9 tolerance resolved toward inclusion; the
/// result always contains the trivial character and is negation-closed.
CharSet large_spectrum(const GSet& a, double eps);

/// Direct evaluation of ||1 - gamma||^2_{L^2(mu_A * mu_-A)} from the
/// definition (used by tests to pin the closed form).
double lspec_norm_sq_definitional(const GSet& a, Index gamma);

GSet bohr_set(const BohrSpec& spec);

/// Membership rule shared by bohr_set and the progression conversion:
/// 2 sin(pi a / L) <= delta + 1e-12.
bool bohr_accepts(const GroupSpec& g, Index gamma, Index x, double delta);

struct ContainmentCheck {
  bool passed = false;
  Rat growth_ratio;  // K = |lX| / |(l-1)X|, computed, never assumed
  double delta = 0.0;
  std::uint64_t lspec_size = 0;
  std::uint64_t bohr_size = 0;
  std::optional<Index> violation;
};

/// Exhaustive verification of X - X inside Bohr(LSpec(lX, eps), 2 eps sqrt(2K)).
ContainmentCheck check_prop_containment(const GSet& x, std::uint64_t l, double eps);

struct BohrSizeReport {
  double ratio = 0.0;  // |Bohr(LSpec(X,eps), 1/2pi)| / |X|
  double growth_order = 0.0;
  std::uint64_t bohr_size = 0;
  std::uint64_t lspec_size = 0;
};

/// Measures the Prop-8.3 quantity; asserts nothing about the constant.
BohrSizeReport measure_bohr_size(const GSet& x, double eps, std::uint64_t growth_n_max = 4);

}  // namespace aal
