#pragma once

// 3SUM to offline Set Disjointness / Set Intersection: family construction,
// recovery of pseudo-solutions from answers, the chunk split from
// intersection to disjointness, and end-to-end drivers.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsum/hashing.hpp"
#include "detsum/instances.hpp"
#include "detsum/selfreduce.hpp"
#include "detsum/set_query.hpp"

namespace detsum {

/// A reported element has no (b, c) preimage.
class MalformedAnswer : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Decomposition {
    std::uint64_t x = 0;
    std::uint64_t y = 0;
};

/// a = x r - y (mod m) with 0 <= y < r and 0 <= x <= ceil((m - 1) / r).
Decomposition decompose(Element a, std::uint64_t m, std::uint64_t r);

struct RecoveryContext {
    std::uint64_t modulus = 1;
    std::uint64_t radix = 1;  ///< r = ceil(sqrt(m))
    DominanceReduction reduction;
    std::vector<Element> elements;  ///< the original sorted instance
    std::vector<SetQuery> queries;
    std::vector<Decomposition> decompositions;  ///< per query
};

/// Construction-derived parameters.
struct FamilyShape {
    Element universe = 0;    ///< U = m
    std::size_t n_sets = 0;  ///< N = 2 g (r + 1)
    std::size_t s = 0;       ///< largest group
    std::size_t q = 0;       ///< sum over R of |A_i|
};

struct SetReduction {
    SetQueryInstance family;
    RecoveryContext ctx;
    ModulusSelection hashing;
    FamilyShape shape;
    bool early_yes = false;  ///< hashing detected a yes-instance; family is empty
    std::uint64_t n_sub = 2;
    double mu = 0;
};

/// Index of B_{i,x} and C_{i,y} inside the family.
std::size_t b_set_index(std::size_t i, std::uint64_t x, std::uint64_t r);
std::size_t c_set_index(std::size_t i, std::uint64_t y, std::uint64_t r, std::size_t groups);

SetReduction build_setdisjointness(const ThreeSumInstance& inst, double alpha, double delta);
SetReduction build_setintersection(const ThreeSumInstance& inst, double alpha, double beta,
                                   double delta);

struct RecoveryResult {
    bool decision = false;
    std::optional<SolutionTriple> witness;
    std::uint64_t listed = 0;     ///< reported elements
    std::uint64_t recovered = 0;  ///< pseudo-solutions (a, b, c) rebuilt
};

/// Throws MalformedAnswer for elements with no preimage.
RecoveryResult recover_and_decide(const RecoveryContext& ctx, const std::vector<QueryAnswer>& answers);

struct SplitInstance {
    SetQueryInstance family;
    std::size_t t = 1;
    std::size_t chunks = 1;  ///< t^2 per original set
};

/// Every set cut into t^2 contiguous near-equal chunks; query q becomes the
/// t^4 chunk-pair queries q t^4 + cl t^2 + cr.
SplitInstance split_intersection_to_disjointness(const SetQueryInstance& instance, std::size_t t);

struct SplitListing {
    std::vector<QueryAnswer> answers;  ///< first min(t, |intersection|) elements
    std::vector<bool> saturated;       ///< t elements were reported
};

SplitListing list_from_disjointness(const SetQueryInstance& original, const SplitInstance& split,
                                    const std::vector<bool>& disjoint);

using DisjointnessOracle = std::function<std::vector<bool>(const SetQueryInstance&)>;
using IntersectionOracle = std::function<std::vector<QueryAnswer>(const SetQueryInstance&)>;

DisjointnessOracle oracle_disjointness();
IntersectionOracle oracle_intersection();
/// Runs `command` with the serialized family on stdin and parses the answer
/// lines from its stdout.
IntersectionOracle external_intersection(std::string command);
DisjointnessOracle external_disjointness(std::string command);

struct SetDriverResult {
    bool decision = false;
    std::optional<SolutionTriple> witness;
    bool early_yes = false;
    ModulusSelection hashing;
    FamilyShape shape;
    std::size_t t = 1;
    std::size_t split_queries = 0;
    std::size_t saturated = 0;
    std::uint64_t listed = 0;
    std::uint64_t recovered = 0;
};

/// delta defaults to min((1 - alpha) / 2, rho / 4).
SetDriverResult solve_3sum_via_setdisjointness(const ThreeSumInstance& inst, double alpha, double rho,
                                               const DisjointnessOracle& oracle,
                                               std::optional<double> delta = std::nullopt);

/// delta defaults to min((1 - alpha) / 2, 1 / 14).
SetDriverResult solve_3sum_via_setintersection(const ThreeSumInstance& inst, double alpha, double beta,
                                               const IntersectionOracle& oracle,
                                               std::optional<double> delta = std::nullopt);

}  // namespace detsum
