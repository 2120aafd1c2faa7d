#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace ceu::fft {

using cd = std::complex<double>;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform, sign = -1 forward, +1 inverse.
// No 1/N scaling is applied; callers own the normalization.
void transform_pow2(std::vector<cd>& a, int sign);

// O(n^2) fallback for non power-of-two sizes.
std::vector<cd> transform_direct(const std::vector<cd>& a, int sign);

inline std::vector<cd> transform(std::vector<cd> a, int sign) {
    if (is_pow2(a.size())) {
        transform_pow2(a, sign);
        return a;
    }
    return transform_direct(a, sign);
}

// Circular convolution of two equal-length sequences.
std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b);

// Circular autocorrelation r_u = sum_j a_{j+u} conj(a_j).
std::vector<cd> circular_autocorrelation(const std::vector<cd>& a);

} // namespace ceu::fft
