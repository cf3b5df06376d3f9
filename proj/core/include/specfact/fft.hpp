#pragma once

#include <vector>

#include "specfact/types.hpp"

namespace specfact {

constexpr bool is_pow2(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

/// In-place radix-2 FFT, length must be a power of two.
/// sign = +1 computes a_l = sum_k x_k exp(+2*pi*i*l*k/K) (evaluation at the
/// K-th roots of unity), sign = -1 the conjugate transform. No normalization.
void fft_pow2(std::vector<cplx>& a, int sign);

/// Unnormalized Fourier sum for arbitrary K: FFT when K is a power of two,
/// direct O(K^2) summation otherwise.
std::vector<cplx> fourier_sum(const std::vector<cplx>& a, int sign);

} // namespace specfact
