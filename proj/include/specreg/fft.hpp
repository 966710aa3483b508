#pragma once

#include <complex>
#include <vector>

namespace specreg {

// In-place discrete Fourier transform, X_k = sum_j x_j exp(sign * 2*pi*i*j*k/N),
// unnormalized. Radix-2 when N is a power of two, direct summation otherwise.
void dft(std::vector<std::complex<double>>& x, int sign);

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace specreg
