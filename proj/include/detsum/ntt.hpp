#pragma once

#include <cstdint>
#include <vector>

namespace detsum {

/// Largest transform length supported by both NTT primes.
inline constexpr std::size_t kMaxNttLength = std::size_t{1} << 25;

/// Exact linear convolution of non-negative integer vectors. Uses two NTT
/// primes and CRT, so every true output coefficient must be below
/// 167772161 * 469762049 (about 7.9e16); throws std::length_error when the
/// output exceeds kMaxNttLength and std::overflow_error when the input sizes
/// could break the coefficient bound.
std::vector<std::uint64_t> convolve_exact(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b);

/// Schoolbook convolution; reference path for small inputs and tests.
std::vector<std::uint64_t> convolve_naive(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b);

}  // namespace detsum
