#pragma once

// 3SUM through Mono Convolution (with deterministic load balancing) and
// through a Convolution Witness data structure.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "detsum/hashing.hpp"
#include "detsum/instances.hpp"
#include "detsum/load_balance.hpp"
#include "detsum/mono_conv.hpp"
#include "detsum/unireduce.hpp"

namespace detsum {

using MonoConvSolver = std::function<std::vector<bool>(const MonoConvInstance&)>;

struct MonoConvParams {
    double delta = 0.2;        ///< load-balancing exponent
    bool bucketed = true;      ///< load_balance instead of load_balance_slow
    AnParams universe{1.5, 0.5, 0.0, 4.0};  ///< step-1 reduction to a quadratic universe
};

struct MonoConvStats {
    std::size_t stages = 0;         ///< AN pieces handled by the mono-conv stage
    std::size_t subinstances = 0;   ///< self-reduction triples over all stages
    std::size_t grid_cells = 0;     ///< (x, y, z) cells solved
    std::uint64_t reports = 0;      ///< flagged indices returned by the solver
    std::uint64_t heavy_total = 0;  ///< sum of |A_i''|
    std::uint64_t brute_pairs = 0;  ///< pairs checked in step 5
    std::uint64_t brute_pair_bound = 0;  ///< S * sum |A_i''|, summed over stages
    double heavy_soft_bound = 0;
    bool loads_ok = true;  ///< direct scan of the load bound
};

struct MonoConvResult {
    bool decision = false;
    std::vector<bool> answers;  ///< All-Numbers answers over the input
    ModulusSelection hashing;   ///< from the step-1 universe reduction
    MonoConvStats stats;
};

/// Answers for the C set of one trichromatic instance via self-reduction,
/// load balancing and mono-convolution calls.
std::vector<bool> monoconv_stage(const TriThreeSumInstance& inst, const MonoConvSolver& solver,
                                 const MonoConvParams& params, MonoConvStats& stats);

MonoConvResult reduce_3sum_to_monoconv(const ThreeSumInstance& inst, const MonoConvSolver& solver,
                                       const MonoConvParams& params);

struct WitnessParams {
    double alpha = 0.5;
    double delta = 0.125;  ///< m2 exponent alpha / 2 - delta
    std::optional<double> bound;
};

struct WitnessResult {
    bool decision = false;
    std::optional<SolutionTriple> witness;
    bool early_yes = false;
    ModulusSelection first;   ///< m1
    ModulusSelection second;  ///< m2, scored on lcm(m1, m2)
    std::uint64_t pairs = 0;          ///< (x, y) pairs preprocessed
    std::uint64_t queries = 0;
    std::uint64_t witnesses = 0;      ///< (i, j) returned
    std::uint64_t expanded = 0;       ///< (a, b, c) candidates checked
    std::uint64_t pseudo_bound = 0;   ///< S(lcm(m1, m2))
};

WitnessResult solve_3sum_via_witness_ds(const ThreeSumInstance& inst, const WitnessFactory& factory,
                                        const WitnessParams& params);

}  // namespace detsum
