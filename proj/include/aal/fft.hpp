#pragma once

#include <complex>
#include <vector>

#include "aal/group.hpp"

namespace aal {

namespace fft {

/// One-dimensional complex DFT plan for an arbitrary length: iterative
/// radix-2 for powers of two, Bluestein's chirp transform otherwise. Plans
/// are immutable after construction and safe to share across threads.
class Plan1D {
public:
  explicit Plan1D(std::size_t n);

  std::size_t length() const { return n_; }
  /// In-place DFT with kernel exp(-2*pi*i*jk/n); inverse applies the +kernel
  /// and divides by n.
  void forward(std::complex<double>* data) const;
  void inverse(std::complex<double>* data) const;

private:
  void pow2_forward(std::complex<double>* data) const;
  std::size_t n_;
  bool pow2_;
  // radix-2 machinery (for n_ itself, or for the Bluestein worker length m_)
  std::size_t m_ = 0;
  std::vector<std::uint32_t> rev_;
  std::vector<std::complex<double>> roots_;  // stage roots, bit-packed
  // Bluestein
  std::vector<std::complex<double>> chirp_;  // exp(-pi*i*k^2/n)
  std::vector<std::complex<double>> kernel_hat_;
};

/// Multidimensional transform over the group's mixed-radix layout: a 1-D
/// transform along every axis. Data length must equal |G|. Lines along an
/// axis are independent and run in parallel.
void transform(const GroupSpec& g, std::vector<std::complex<double>>& data, bool inverse);

}  // namespace fft

namespace reference {

/// Definitional O(|G|^2) transform straight from the character sum
/// f_hat(t) = sum_x f(x) * conj(gamma_t(x)). Serial; the test oracle and
/// benchmark baseline for fft::transform.
std::vector<std::complex<double>> dft(const GroupSpec& g, std::span<const std::complex<double>> f,
                                      bool inverse);

}  // namespace reference

}  // namespace aal
