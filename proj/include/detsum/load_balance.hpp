#pragma once

// Shifts s_1..s_N for sets A_1..A_N in [1, U], chosen one at a time by
// conditional expectations, and the light/heavy split A_i = A_i' + A_i''.

#include <cstdint>
#include <vector>

#include "detsum/instances.hpp"

namespace detsum {

struct LoadStage {
    std::size_t stage = 0;  ///< 1-based set (or bucket) index
    std::uint64_t shift = 0;
    std::uint64_t objective = 0;      ///< M_i at the chosen shift
    std::uint64_t objective_sum = 0;  ///< sum of M_i(s) over s in [0, U)

    /// objective <= objective_sum / U, compared exactly.
    bool dominance_holds(Element universe) const {
        return objective <= objective_sum / universe;
    }
};

struct LoadBalanceResult {
    Element universe = 1;
    std::vector<std::uint64_t> shifts;      ///< per set, in [0, U)
    std::vector<std::vector<Element>> light;  ///< A_i'
    std::vector<std::vector<Element>> heavy;  ///< A_i''
    std::vector<LoadStage> trace;
    std::uint64_t threshold = 0;   ///< lightness threshold used for the split
    std::uint64_t load_bound = 0;  ///< L
    std::size_t bucket_size = 1;

    std::uint64_t heavy_total() const;
};

/// One stage per set; threshold ceil(N^delta). Throws on elements outside
/// [1, universe].
LoadBalanceResult load_balance_slow(const std::vector<std::vector<Element>>& sets, Element universe,
                                    double delta);

/// Buckets of ceil(N^delta) consecutive sets; slow balancing over the bucket
/// unions with threshold floor(L / bucket size), L = ceil(N^(5 delta)).
LoadBalanceResult load_balance(const std::vector<std::vector<Element>>& sets, Element universe,
                               double delta);

/// N^(2 - delta) S^2 / U, the soft bound reported against heavy_total().
double heavy_soft_bound(std::size_t n_sets, std::size_t max_size, Element universe, double delta);

}  // namespace detsum
