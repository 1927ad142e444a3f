#include "detsum/ntt.hpp"

#include <algorithm>
#include <stdexcept>

namespace detsum {

namespace {

using u64 = std::uint64_t;
__extension__ typedef unsigned __int128 u128;

constexpr u64 kP1 = 167772161;  // 5 * 2^25 + 1
constexpr u64 kP2 = 469762049;  // 7 * 2^26 + 1
constexpr u64 kRoot = 3;

u64 pow_mod(u64 base, u64 exp, u64 mod) {
    u64 result = 1;
    base %= mod;
    while (exp > 0) {
        if (exp & 1) result = result * base % mod;
        base = base * base % mod;
        exp >>= 1;
    }
    return result;
}

void transform(std::vector<u64>& a, u64 mod, bool inverse) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 w = pow_mod(kRoot, (mod - 1) / len, mod);
        if (inverse) w = pow_mod(w, mod - 2, mod);
        const std::size_t half = len / 2;
        std::vector<u64> powers(half);
        powers[0] = 1;
        for (std::size_t k = 1; k < half; ++k) powers[k] = powers[k - 1] * w % mod;
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const u64 u = a[i + k];
                const u64 v = a[i + k + half] * powers[k] % mod;
                a[i + k] = u + v >= mod ? u + v - mod : u + v;
                a[i + k + half] = u >= v ? u - v : u + mod - v;
            }
        }
    }
    if (inverse) {
        const u64 inv_n = pow_mod(n, mod - 2, mod);
        for (auto& x : a) x = x * inv_n % mod;
    }
}

std::vector<u64> convolve_mod(const std::vector<u64>& a, const std::vector<u64>& b, std::size_t size,
                              u64 mod) {
    std::vector<u64> fa(size, 0), fb(size, 0);
    for (std::size_t i = 0; i < a.size(); ++i) fa[i] = a[i] % mod;
    for (std::size_t i = 0; i < b.size(); ++i) fb[i] = b[i] % mod;
    transform(fa, mod, false);
    transform(fb, mod, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = fa[i] * fb[i] % mod;
    transform(fa, mod, true);
    return fa;
}

}  // namespace

std::vector<std::uint64_t> convolve_naive(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<std::uint64_t> convolve_exact(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t out_len = a.size() + b.size() - 1;
    if (out_len > kMaxNttLength) throw std::length_error("convolve_exact: output too long");

    const u64 max_a = *std::max_element(a.begin(), a.end());
    const u64 max_b = *std::max_element(b.begin(), b.end());
    const u128 worst = static_cast<u128>(max_a) * max_b *
                                    std::min(a.size(), b.size());
    if (worst >= static_cast<u128>(kP1) * kP2) {
        throw std::overflow_error("convolve_exact: coefficients may exceed the CRT range");
    }

    if (std::min(a.size(), b.size()) <= 32) return convolve_naive(a, b);

    std::size_t size = 1;
    while (size < out_len) size <<= 1;
    const auto r1 = convolve_mod(a, b, size, kP1);
    const auto r2 = convolve_mod(a, b, size, kP2);

    const u64 inv_p1 = pow_mod(kP1, kP2 - 2, kP2);
    std::vector<u64> out(out_len);
    for (std::size_t i = 0; i < out_len; ++i) {
        const u64 diff = (r2[i] + kP2 - r1[i] % kP2) % kP2;
        const u64 t = diff * inv_p1 % kP2;
        out[i] = r1[i] + kP1 * t;
    }
    return out;
}

}  // namespace detsum
