#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace collatz {

// In-place Walsh-Hadamard transform with the 2^-K forward normalization:
// fhat(xi) = 2^{-K} sum_a f(a) (-1)^{<a, xi>}.
inline std::vector<double> walsh_spectrum(std::vector<double> f) {
    const size_t n = f.size();
    if (n == 0 || (n & (n - 1))) throw std::invalid_argument("length must be a power of two");
    for (size_t bs = 1; bs < n; bs <<= 1) {
        for (size_t i = 0; i < n; i += 2 * bs) {
            for (size_t j = i; j < i + bs; ++j) {
                double x = f[j], y = f[j + bs];
                f[j] = x + y;
                f[j + bs] = x - y;
            }
        }
    }
    for (auto& x : f) x /= static_cast<double>(n);
    return f;
}

// power carried by each Hamming-weight band of the spectrum
inline std::vector<double> band_power(const std::vector<double>& fhat) {
    size_t n = fhat.size();
    int K = 0;
    while ((1ull << K) < n) ++K;
    std::vector<double> bands(K + 1, 0.0);
    for (size_t xi = 0; xi < n; ++xi)
        bands[__builtin_popcountll(xi)] += fhat[xi] * fhat[xi];
    return bands;
}

}  // namespace collatz
