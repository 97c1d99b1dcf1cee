#include "aal/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "aal/parallel.hpp"

namespace aal::fft {

namespace {

std::complex<double> unit_phase(std::uint64_t num, std::uint64_t den) {
  // exp(-2*pi*i * num/den) from the exact fraction
  double theta = -2.0 * std::numbers::pi * (double)(num % den) / (double)den;
  return std::polar(1.0, theta);
}

}  // namespace

Plan1D::Plan1D(std::size_t n) : n_(n), pow2_(std::has_single_bit(n)) {
  std::size_t work = n;
  if (!pow2_) {
    m_ = std::bit_ceil(2 * n - 1);
    work = m_;
    // chirp c_k = exp(-pi*i*k^2/n); k^2 is reduced mod 2n to keep phases exact
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) chirp_[k] = unit_phase((k * k) % (2 * n), 2 * n);
  } else {
    m_ = n;
  }
  if (work > 1) {
    rev_.resize(work);
    unsigned bits = (unsigned)std::countr_zero(work);
    for (std::size_t i = 0; i < work; ++i) {
      std::uint32_t r = 0;
      for (unsigned b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
      rev_[i] = r;
    }
    roots_.resize(work);
    // per-stage roots: for stage half = 2^s, roots_[half + j] = exp(-pi*i*j/half)
    for (std::size_t half = 1; half < work; half *= 2)
      for (std::size_t j = 0; j < half; ++j) roots_[half + j] = unit_phase(j, 2 * half);
  }
  if (!pow2_) {
    // kernel b_t = conj(chirp_{|t|}) wrapped onto [0, m)
    std::vector<std::complex<double>> b(m_, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
      std::complex<double> v = std::conj(chirp_[t]);
      b[t] = v;
      if (t) b[m_ - t] = v;
    }
    pow2_forward(b.data());
    kernel_hat_ = std::move(b);
  }
}

void Plan1D::pow2_forward(std::complex<double>* a) const {
  std::size_t n = m_;
  if (n <= 1) return;
  for (std::size_t i = 0; i < n; ++i)
    if (rev_[i] > i) std::swap(a[i], a[rev_[i]]);
  for (std::size_t half = 1; half < n; half *= 2) {
    for (std::size_t base = 0; base < n; base += 2 * half) {
      for (std::size_t j = 0; j < half; ++j) {
        std::complex<double> w = roots_[half + j];
        std::complex<double> u = a[base + j];
        std::complex<double> v = a[base + half + j] * w;
        a[base + j] = u + v;
        a[base + half + j] = u - v;
      }
    }
  }
}

void Plan1D::forward(std::complex<double>* data) const {
  if (n_ <= 1) return;
  if (pow2_) {
    pow2_forward(data);
    return;
  }
  // Bluestein: X_k = chirp_k * ((a .* chirp) (*) conj-chirp)[k]
  std::vector<std::complex<double>> u(m_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) u[j] = data[j] * chirp_[j];
  pow2_forward(u.data());
  for (std::size_t j = 0; j < m_; ++j) u[j] *= kernel_hat_[j];
  // inverse pow2 via conjugation
  for (auto& z : u) z = std::conj(z);
  pow2_forward(u.data());
  double inv_m = 1.0 / (double)m_;
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(u[k]) * inv_m * chirp_[k];
}

void Plan1D::inverse(std::complex<double>* data) const {
  if (n_ <= 1) return;
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
  forward(data);
  double inv_n = 1.0 / (double)n_;
  for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]) * inv_n;
}

void transform(const GroupSpec& g, std::vector<std::complex<double>>& data, bool inverse) {
  if (data.size() != g.size()) fail(Errc::ParseError, "transform length mismatch");
  const auto& orders = g.orders();
  std::uint64_t total = g.size();
  std::uint64_t stride = 1;
  for (std::size_t axis = orders.size(); axis-- > 0;) {
    std::uint64_t n = orders[axis];
    if (n > 1) {
      Plan1D plan((std::size_t)n);
      std::uint64_t block = stride * n;
      std::uint64_t lines = total / n;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(thread_count())
#endif
      for (std::ptrdiff_t line = 0; line < (std::ptrdiff_t)lines; ++line) {
        std::uint64_t blk = (std::uint64_t)line / stride;
        std::uint64_t inner = (std::uint64_t)line % stride;
        std::uint64_t base = blk * block + inner;
        std::vector<std::complex<double>> buf((std::size_t)n);
        for (std::uint64_t p = 0; p < n; ++p) buf[p] = data[base + p * stride];
        if (inverse)
          plan.inverse(buf.data());
        else
          plan.forward(buf.data());
        for (std::uint64_t p = 0; p < n; ++p) data[base + p * stride] = buf[p];
      }
    }
    stride *= n;
  }
}

}  // namespace aal::fft

namespace aal::reference {

std::vector<std::complex<double>> dft(const GroupSpec& g, std::span<const std::complex<double>> f,
                                      bool inverse) {
  std::uint64_t n = g.size();
  std::vector<std::complex<double>> out(n);
  for (Index t = 0; t < n; ++t) {
    std::complex<double> acc = 0.0;
    for (Index x = 0; x < n; ++x) {
      std::complex<double> k = g.char_value(t, x);
      acc += f[x] * (inverse ? k : std::conj(k));
    }
    out[t] = inverse ? acc / (double)n : acc;
  }
  return out;
}

}  // namespace aal::reference
