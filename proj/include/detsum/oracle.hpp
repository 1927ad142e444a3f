#pragma once

// Brute-force reference solvers. Quadratic or cubic on purpose.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "detsum/instances.hpp"
#include "detsum/mono_conv.hpp"
#include "detsum/set_query.hpp"

namespace detsum {

/// Genuine solution with the smallest a and, for that a, the largest b, by a
/// two-pointer merge per a.
std::optional<SolutionTriple> solve_3sum(const ThreeSumInstance& inst);
std::optional<SolutionTriple> solve_3sum(const MultisetInstance& inst);
std::optional<SolutionTriple> solve_3sum(const TriThreeSumInstance& inst);

/// Every genuine ordered triple, sorted.
std::vector<SolutionTriple> list_solutions(const ThreeSumInstance& inst);
std::vector<SolutionTriple> list_solutions(const TriThreeSumInstance& inst);

/// flag[t] is true iff elements[t] = a + b for some a, b in the set.
std::vector<bool> solve_an3sum(const ThreeSumInstance& inst);
/// Aligned with the multiset's distinct entries.
std::vector<bool> solve_an3sum(const MultisetInstance& inst);
/// Aligned with the C set: flag[t] iff c_t = a + b with a in A, b in B.
std::vector<bool> solve_an3sum(const TriThreeSumInstance& inst);

/// flag[k - 1] iff some i + j = k has X[i] + X[j] = X[k] (1-based indices).
std::vector<bool> solve_conv3sum(const ConvThreeSumInstance& inst);

/// #{(a, b, c) in A^3 : a + b = c (mod m)} by a triple loop.
std::uint64_t count_pseudo_bruteforce(std::span<const Element> values, std::uint64_t m);
std::uint64_t count_pseudo_bruteforce(const ThreeSumInstance& inst, std::uint64_t m);
std::uint64_t count_pseudo_bruteforce(const MultisetInstance& inst, std::uint64_t m);

/// Sorted-merge answers for every query. Throws std::out_of_range on a bad
/// set index.
std::vector<QueryAnswer> solve_set_queries(const SetQueryInstance& family);

/// flag[k - 1] iff some i + j = k has X[i] = Y[j] = Z[k]. Throws
/// std::invalid_argument on length mismatch.
std::vector<bool> solve_monoconv(const MonoConvInstance& inst);

/// Stores both vectors; answers each query by a direct scan.
class NaiveWitnessStructure final : public WitnessStructure {
public:
    NaiveWitnessStructure(std::vector<std::uint8_t> x, std::vector<std::uint8_t> y);
    std::vector<Witness> query(std::size_t k) const override;

private:
    std::vector<std::uint8_t> x_;
    std::vector<std::uint8_t> y_;
};

WitnessFactory naive_witness_factory();

}  // namespace detsum
