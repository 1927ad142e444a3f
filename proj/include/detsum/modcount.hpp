#pragma once

// Exact modular counting: residue histograms, pseudo-solution counts S(m),
// collision counts, and prime enumeration.

#include <cstdint>
#include <span>
#include <vector>

#include "detsum/instances.hpp"

namespace detsum {

struct ResidueHistogram {
    std::uint64_t modulus = 1;
    std::vector<std::uint64_t> counts;
};

/// Histogram of `values` (repeats counted) modulo m. Throws on m == 0.
ResidueHistogram residue_histogram(std::span<const Element> values, std::uint64_t m);
ResidueHistogram residue_histogram(const ThreeSumInstance& inst, std::uint64_t m);
ResidueHistogram residue_histogram(const MultisetInstance& inst, std::uint64_t m);

enum class ConvolutionMethod {
    automatic,  ///< cheapest of the exact paths below
    ntt,        ///< dense two-prime NTT over the length-m histogram
    sparse,     ///< loop over pairs of occupied residues
    naive,      ///< O(m^2) cyclic convolution
};

/// #{(a, b, c) in A^3 : a + b = c (mod m)}, counting repeats; exact.
std::uint64_t count_solutions_mod(std::span<const Element> values, std::uint64_t m,
                                  ConvolutionMethod method = ConvolutionMethod::automatic);
std::uint64_t count_solutions_mod(const ThreeSumInstance& inst, std::uint64_t m,
                                  ConvolutionMethod method = ConvolutionMethod::automatic);
std::uint64_t count_solutions_mod(const MultisetInstance& inst, std::uint64_t m,
                                  ConvolutionMethod method = ConvolutionMethod::automatic);

/// #{(a, b) in A^2 : a = b (mod m)}, diagonal included.
std::uint64_t count_collisions_mod(std::span<const Element> values, std::uint64_t m);
std::uint64_t count_collisions_mod(const ThreeSumInstance& inst, std::uint64_t m);
std::uint64_t count_collisions_mod(const MultisetInstance& inst, std::uint64_t m);

struct PrimeRange {
    std::uint64_t low = 2;
    std::uint64_t high = 2;
    std::vector<std::uint64_t> primes;

    bool empty() const noexcept { return primes.empty(); }
};

/// All primes in [low, high) by a segmented sieve. Requires
/// 2 <= low < high <= 2^32; an empty list is a normal result.
PrimeRange primes_in_range(std::uint64_t low, std::uint64_t high);

}  // namespace detsum
