#include "ceu/fft.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace ceu::fft {

namespace {

// Twiddle tables per size, shared across threads.
const std::vector<cd>& twiddles(std::size_t n) {
    static std::mutex mtx;
    static std::unordered_map<std::size_t, std::vector<cd>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    std::vector<cd> tw(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        double ang = -2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
        tw[k] = cd(std::cos(ang), std::sin(ang));
    }
    return cache.emplace(n, std::move(tw)).first->second;
}

} // namespace

void transform_pow2(std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw std::invalid_argument("transform_pow2: size must be a power of two");
    if (n == 1) return;
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    const std::vector<cd>& tw = twiddles(n);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t step = n / len;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                cd w = tw[k * step];
                if (sign > 0) w = std::conj(w);
                cd u = a[i + k];
                cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

std::vector<cd> transform_direct(const std::vector<cd>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<cd> out(n, cd(0.0, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        cd acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            double ang = sign * 2.0 * M_PI * static_cast<double>(k) * static_cast<double>(j) /
                         static_cast<double>(n);
            acc += a[j] * cd(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

std::vector<double> circular_convolve(const std::vector<double>& a,
                                      const std::vector<double>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("circular_convolve: size mismatch");
    const std::size_t n = a.size();
    std::vector<cd> fa(n), fb(n);
    for (std::size_t i = 0; i < n; ++i) {
        fa[i] = cd(a[i], 0.0);
        fb[i] = cd(b[i], 0.0);
    }
    fa = transform(std::move(fa), -1);
    fb = transform(std::move(fb), -1);
    for (std::size_t i = 0; i < n; ++i) fa[i] *= fb[i];
    fa = transform(std::move(fa), +1);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real() / static_cast<double>(n);
    return out;
}

std::vector<cd> circular_autocorrelation(const std::vector<cd>& a) {
    const std::size_t n = a.size();
    std::vector<cd> fa = transform(a, -1);
    for (std::size_t i = 0; i < n; ++i) fa[i] = cd(std::norm(fa[i]), 0.0);
    fa = transform(std::move(fa), +1);
    for (std::size_t i = 0; i < n; ++i) fa[i] /= static_cast<double>(n);
    return fa;
}

} // namespace ceu::fft
