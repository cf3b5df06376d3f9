#include "specfact/fft.hpp"

#include <cmath>
#include <numbers>

namespace specfact {

void fft_pow2(std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;

    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }

    // twiddle table from per-entry trig so rounding does not accumulate
    // across butterfly stages
    std::vector<cplx> w(n / 2);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n / 2; ++k)
        w[k] = std::polar(1.0, base * static_cast<double>(k));

    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t stride = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = a[i + k];
                const cplx v = a[i + k + len / 2] * w[k * stride];
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cplx> fourier_sum(const std::vector<cplx>& a, int sign) {
    const std::size_t n = a.size();
    if (is_pow2(n)) {
        std::vector<cplx> out = a;
        fft_pow2(out, sign);
        return out;
    }
    std::vector<cplx> out(n);
    const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t l = 0; l < n; ++l) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            acc += a[k] * std::polar(1.0, base * static_cast<double>(l * k % n));
        out[l] = acc;
    }
    return out;
}

} // namespace specfact
