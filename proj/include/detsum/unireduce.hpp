#pragma once

// Universe reductions: 3SUM to a cubic universe, All-Numbers 3SUM and
// Convolution 3SUM to quadratic universes, and listing over small universes.
// Each pipeline calls a solver supplied by the caller for the small problem.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "detsum/hashing.hpp"
#include "detsum/instances.hpp"

namespace detsum {

using TriDecisionSolver = std::function<bool(const TriThreeSumInstance&)>;
/// Answers aligned with the C set of the given instance.
using TriAnSolver = std::function<std::vector<bool>(const TriThreeSumInstance&)>;
using ConvSolver = std::function<std::vector<bool>(const ConvThreeSumInstance&)>;
using Lister = std::function<std::vector<SolutionTriple>(const ThreeSumInstance&)>;

/// Bad pipeline parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Internal invariant broken (also raised on malformed solver output).
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct CubicParams {
    double mu = 1.5;
    double delta = 0.5;
    double alpha = 0.5;
    double chop_constant = 1.0;  ///< target universe ceil(c * n^(3 - 3 alpha))
    std::optional<double> bound;
};

struct CubicResult {
    bool decision = false;
    std::optional<SolutionTriple> witness;
    bool early_yes = false;
    ModulusSelection hashing;
    std::size_t groups = 0;
    std::size_t subinstances = 0;
    std::size_t chop_pieces = 0;
    std::size_t positive_subinstances = 0;
    std::uint64_t enumerated = 0;  ///< A' triples listed in step 4
    Element chop_target = 0;
    bool caps_ok = true;           ///< every chopped universe <= its target
};

CubicResult reduce_3sum_cubic(const ThreeSumInstance& inst, const TriDecisionSolver& solver,
                              const CubicParams& params);

struct AnParams {
    double mu = 1.5;
    double delta = 0.5;
    double alpha = 0.5;
    double chop_constant = 1.0;  ///< target universe ceil(c * n^(2 - 2 alpha))
};

struct AnResult {
    std::vector<bool> answers;
    ModulusSelection hashing;
    std::size_t groups = 0;
    std::size_t subinstances = 0;
    std::size_t chop_pieces = 0;
    std::uint64_t flagged = 0;     ///< A' positions flagged by the solver
    std::uint64_t enumerated = 0;  ///< A' triples listed in step 4
    Element chop_target = 0;
    bool caps_ok = true;
};

AnResult reduce_an3sum_quadratic(const ThreeSumInstance& inst, const TriAnSolver& solver,
                                 const AnParams& params);

struct ConvParams {
    double heavy_exponent = 0.25;  ///< heavy threshold t = ceil(n^heavy_exponent)
    CubicParams cubic;             ///< used when U > n^3
};

struct ConvResult {
    bool decision = false;
    bool composed = false;  ///< went through reduce_3sum_cubic first
    std::size_t stages = 0;
    std::uint64_t modulus = 0;  ///< of the last stage
    std::size_t heavy_elements = 0;
    std::size_t grid_cells = 0;
    std::size_t solver_calls = 0;
    Element max_entry = 0;    ///< largest non-dummy vector entry
    Element entry_limit = 0;  ///< floor(U / m) + 2 of the stage that set max_entry
    bool entries_ok = true;
};

/// Stage for a trichromatic instance over a universe <= n^3.
ConvResult conv_stage(const TriThreeSumInstance& inst, const ConvSolver& solver, double heavy_exponent);

ConvResult reduce_conv3sum_quadratic(const ThreeSumInstance& inst, const ConvSolver& solver,
                                     const ConvParams& params);

/// Monochromatic vector for the trichromatic triple (X, Y, Z) with |X| = |Y|
/// = m and |Z| = 2m - 1 (Z[0] is index 2): X at indices m+1..2m, Y at
/// 2m+1..3m, Z at 3m+2..5m, tagged D, 10D, 11D; other slots hold 100D.
ConvThreeSumInstance tri_conv_to_mono(const std::vector<Element>& x, const std::vector<Element>& y,
                                      const std::vector<Element>& z);

struct ListingParams {
    double mu = 1.5;
    double delta = 0.5;
    std::optional<std::uint64_t> cap;  ///< default 3 * S(m)
};

struct ListingResult {
    bool decision = false;
    std::optional<SolutionTriple> witness;
    ModulusSelection hashing;
    std::size_t dummies = 0;
    std::size_t listed = 0;
    std::uint64_t cap = 0;
    std::uint64_t checked_pairs = 0;
};

ListingResult reduce_listing_small_universe(const ThreeSumInstance& inst, const Lister& lister,
                                            const ListingParams& params);

/// Dummy block {M + L i : i in [k]} for A' in [1, 2m]: L = 2m + 1,
/// M = max(10m, L (k + 1)).
std::vector<Element> listing_dummies(std::uint64_t m, std::size_t k);

}  // namespace detsum
