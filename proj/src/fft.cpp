#include "specreg/fft.hpp"

#include <cmath>
#include <numbers>

namespace specreg {

namespace {

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

void dft_naive(std::vector<std::complex<double>>& a, int sign) {
  const std::size_t n = a.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> s(0.0, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      const double ang = sign * 2.0 * std::numbers::pi *
                         static_cast<double>((j * k) % n) / static_cast<double>(n);
      s += a[j] * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    out[k] = s;
  }
  a = std::move(out);
}

}  // namespace

void dft(std::vector<std::complex<double>>& x, int sign) {
  if (x.size() <= 1) return;
  if (is_pow2(x.size()))
    fft_pow2(x, sign);
  else
    dft_naive(x, sign);
}

}  // namespace specreg
