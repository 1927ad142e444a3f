#pragma once

// Deterministic choice of a modulus m = p_1 * ... * p_R * pad with few
// collisions or few pseudo-solutions, one prime at a time by conditional
// expectations.

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "detsum/instances.hpp"
#include "detsum/modcount.hpp"

namespace detsum {

struct HashParams {
    double mu = 1.0;
    double delta = 0.5;
    std::uint64_t n = 2;  ///< size scale used for n^mu and n^delta
};

/// No usable prime: the pool is empty under the strict policy or the
/// search ran past 2^32.
class HashingAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class PoolPolicy {
    widen,   ///< move to the next dyadic prime range when the pool runs dry
    strict,  ///< abort instead
};

struct HashOptions {
    /// Overrides the default detection bound B.
    std::optional<double> bound;
    PoolPolicy policy = PoolPolicy::widen;
    /// Scores use S(lcm(base_modulus, m)); the returned m excludes it.
    std::uint64_t base_modulus = 1;
    ConvolutionMethod method = ConvolutionMethod::automatic;
};

struct CandidateScore {
    std::uint64_t prime = 0;
    std::uint64_t score = 0;
};

struct HashRound {
    std::size_t round = 0;  ///< 1-based
    std::uint64_t range_low = 0;
    std::uint64_t range_high = 0;
    bool widened = false;  ///< range differs from the initial [n^delta, 2n^delta)
    std::vector<CandidateScore> candidates;
    std::uint64_t score_sum = 0;
    std::uint64_t chosen = 0;
    std::uint64_t modulus_before = 1;
    std::uint64_t modulus_after = 1;
    std::uint64_t score_before = 0;
    std::uint64_t score_after = 0;

    std::size_t pool_size() const noexcept { return candidates.size(); }
    /// score_after <= mean candidate score, compared exactly.
    bool dominance_holds() const;
};

enum class HashVerdict { modulus, yes_instance };

struct ModulusSelection {
    std::uint64_t modulus = 1;           ///< padded m, excluding the base
    std::uint64_t combined_modulus = 1;  ///< lcm(base, m)
    std::uint64_t target = 1;            ///< ceil(n^mu)
    std::uint64_t stop_threshold = 1;    ///< ceil(n^(mu - delta) / 2)
    std::uint64_t padding = 1;
    std::vector<HashRound> trace;
    std::uint64_t initial_score = 0;
    std::uint64_t final_score = 0;  ///< score of combined_modulus
    double bound = 0;               ///< B, default or configured
    /// Bound every no-instance provably stays under (see README).
    std::uint64_t certified_bound = 0;
    HashVerdict verdict = HashVerdict::modulus;

    /// One line per round: "round p_chosen S_before S_after mean_S |P|".
    std::string trace_text() const;
};

/// ceil(n^e) evaluated in double precision.
std::uint64_t ceil_power(std::uint64_t n, double e);

/// g * n^(3 - mu + delta) * (2 log2 U)^ceil(mu / delta).
double default_detection_bound(std::uint64_t n, std::size_t g, double mu, double delta,
                               Element universe);

ModulusSelection select_modulus_few_collisions(std::span<const Element> values,
                                               const HashParams& params,
                                               const HashOptions& options = {});
ModulusSelection select_modulus_few_collisions(const ThreeSumInstance& inst,
                                               const HashParams& params,
                                               const HashOptions& options = {});

/// `instances` hold the value lists A_1..A_g (repeats allowed), all inside
/// [1, universe].
ModulusSelection select_modulus_few_false_positives(
    const std::vector<std::vector<Element>>& instances, Element universe,
    const HashParams& params, const HashOptions& options = {});
ModulusSelection select_modulus_few_false_positives(const std::vector<ThreeSumInstance>& instances,
                                                    const HashParams& params,
                                                    const HashOptions& options = {});

}  // namespace detsum
