#include "detsum/hashing.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "detsum/parallel.hpp"

namespace detsum {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kPrimeCeiling = std::uint64_t{1} << 32;

void check_params(const HashParams& params, double mu_max, bool mu_inclusive) {
    if (!(params.delta > 0)) throw std::invalid_argument("hashing: delta must be positive");
    if (params.mu < 0 || params.mu > mu_max || (!mu_inclusive && params.mu == mu_max)) {
        throw std::invalid_argument("hashing: mu out of range");
    }
    if (params.n < 2) throw std::invalid_argument("hashing: n must be at least 2");
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    const u128 p = static_cast<u128>(a) * b;
    return p > ~std::uint64_t{0} ? ~std::uint64_t{0} : static_cast<std::uint64_t>(p);
}

/// Largest e with base^e <= value.
std::uint64_t integer_log(std::uint64_t value, std::uint64_t base) {
    std::uint64_t e = 0;
    u128 power = base;
    while (power <= value) {
        ++e;
        power *= base;
    }
    return e;
}

using ScoreFn = std::function<std::uint64_t(std::uint64_t)>;

struct SelectionSetup {
    HashParams params;
    HashOptions options;
    bool certify = false;
    Element universe = 1;
};

ModulusSelection run_selection(const ScoreFn& score_of, const SelectionSetup& setup) {
    const auto& params = setup.params;
    const std::uint64_t base = setup.options.base_modulus;
    if (base == 0) throw std::invalid_argument("hashing: base modulus must be positive");

    ModulusSelection sel;
    const double goal = std::pow(static_cast<double>(params.n), params.mu);
    sel.target = ceil_power(params.n, params.mu);
    sel.stop_threshold = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(0.5 * std::pow(static_cast<double>(params.n),
                                                              params.mu - params.delta))));
    const std::uint64_t nd = ceil_power(params.n, params.delta);
    std::uint64_t low = std::max<std::uint64_t>(2, nd);
    std::uint64_t high = 2 * nd;
    bool widened = false;
    std::vector<std::uint64_t> pool;
    if (low < high) pool = primes_in_range(low, high).primes;

    std::uint64_t m = 1;
    sel.initial_score = score_of(base);
    std::uint64_t current = sel.initial_score;
    std::uint64_t certified = sel.initial_score;

    while (m < sel.stop_threshold) {
        while (pool.empty()) {
            if (setup.options.policy == PoolPolicy::strict) {
                throw HashingAbort("hashing: no candidate primes left in [" + std::to_string(low) +
                                   ", " + std::to_string(high) + "); raise delta or n");
            }
            if (high >= kPrimeCeiling) throw HashingAbort("hashing: prime search exceeded 2^32");
            low = std::max<std::uint64_t>(2, high);
            high = std::min(kPrimeCeiling, 2 * high);
            widened = true;
            pool = primes_in_range(low, high).primes;
        }
        std::vector<std::uint64_t> candidates;
        for (const auto p : pool) {
            if (static_cast<double>(saturating_mul(m, p)) < 2 * goal) candidates.push_back(p);
        }
        if (candidates.empty()) break;

        HashRound round;
        round.round = sel.trace.size() + 1;
        round.range_low = low;
        round.range_high = high;
        round.widened = widened;
        round.modulus_before = m;
        round.score_before = current;
        round.candidates.resize(candidates.size());
        parallel_for(candidates.size(), [&](std::size_t c) {
            const std::uint64_t mp = m * candidates[c];
            round.candidates[c] = {candidates[c], score_of(std::lcm(base, mp))};
        });
        u128 sum = 0;
        std::size_t best = 0;
        for (std::size_t c = 0; c < candidates.size(); ++c) {
            sum += round.candidates[c].score;
            if (round.candidates[c].score < round.candidates[best].score) best = c;
        }
        if (sum > ~std::uint64_t{0}) throw std::overflow_error("hashing: score sum overflows");
        round.score_sum = static_cast<std::uint64_t>(sum);
        round.chosen = round.candidates[best].prime;
        round.score_after = round.candidates[best].score;

        if (setup.certify) {
            const std::uint64_t big_m = std::lcm(base, m);
            const std::uint64_t span = 2 * setup.universe - 1;
            std::uint64_t k = integer_log(span / big_m, candidates.front());
            for (const auto p : candidates) k += big_m % p == 0 ? 1 : 0;
            const u128 next = static_cast<u128>(certified) * k / candidates.size();
            certified = std::min<std::uint64_t>(certified, static_cast<std::uint64_t>(next));
        }

        m *= round.chosen;
        round.modulus_after = m;
        current = round.score_after;
        pool.erase(std::find(pool.begin(), pool.end(), round.chosen));
        sel.trace.push_back(std::move(round));
    }

    // Smallest multiple of m that reaches n^mu.
    sel.padding = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(goal / static_cast<double>(m))));
    while (sel.padding > 1 && static_cast<double>((sel.padding - 1) * m) >= goal) --sel.padding;
    while (static_cast<double>(sel.padding * m) < goal) ++sel.padding;
    sel.modulus = m * sel.padding;
    sel.combined_modulus = std::lcm(base, sel.modulus);
    sel.final_score = sel.padding == 1 ? current : score_of(sel.combined_modulus);
    sel.certified_bound = certified;
    return sel;
}

}  // namespace

bool HashRound::dominance_holds() const {
    return static_cast<u128>(score_after) * candidates.size() <= score_sum;
}

std::string ModulusSelection::trace_text() const {
    std::string out;
    for (const auto& r : trace) {
        const u128 scaled = static_cast<u128>(r.score_sum) * 1000 / r.pool_size();
        const std::uint64_t whole = static_cast<std::uint64_t>(scaled / 1000);
        const std::uint64_t frac = static_cast<std::uint64_t>(scaled % 1000);
        std::string frac_text = std::to_string(frac);
        frac_text.insert(0, 3 - frac_text.size(), '0');
        out += std::to_string(r.round) + " " + std::to_string(r.chosen) + " " +
               std::to_string(r.score_before) + " " + std::to_string(r.score_after) + " " +
               std::to_string(whole) + "." + frac_text + " " + std::to_string(r.pool_size()) + "\n";
    }
    return out;
}

std::uint64_t ceil_power(std::uint64_t n, double e) {
    const double v = std::pow(static_cast<double>(n), e);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(v)));
}

double default_detection_bound(std::uint64_t n, std::size_t g, double mu, double delta,
                               Element universe) {
    const double nd = static_cast<double>(n);
    const double log_term = 2.0 * std::log2(static_cast<double>(std::max<Element>(universe, 2)));
    return static_cast<double>(g) * std::pow(nd, 3.0 - mu + delta) *
           std::pow(log_term, std::ceil(mu / delta));
}

ModulusSelection select_modulus_few_collisions(std::span<const Element> values,
                                               const HashParams& params,
                                               const HashOptions& options) {
    check_params(params, 2.0, true);
    SelectionSetup setup{params, options, false, 1};
    setup.options.base_modulus = 1;
    const ScoreFn score = [&](std::uint64_t mod) { return count_collisions_mod(values, mod); };
    auto sel = run_selection(score, setup);
    sel.bound = 0;
    return sel;
}

ModulusSelection select_modulus_few_collisions(const ThreeSumInstance& inst,
                                               const HashParams& params,
                                               const HashOptions& options) {
    return select_modulus_few_collisions(std::span<const Element>(inst.elements()), params, options);
}

ModulusSelection select_modulus_few_false_positives(
    const std::vector<std::vector<Element>>& instances, Element universe,
    const HashParams& params, const HashOptions& options) {
    check_params(params, 3.0, false);
    if (instances.empty()) throw std::invalid_argument("hashing: need at least one instance");
    SelectionSetup setup{params, options, true, universe};
    const ScoreFn score = [&](std::uint64_t mod) {
        std::uint64_t total = 0;
        for (const auto& inst : instances) {
            total += count_solutions_mod(std::span<const Element>(inst), mod, options.method);
        }
        return total;
    };
    auto sel = run_selection(score, setup);
    sel.bound = options.bound ? *options.bound
                              : default_detection_bound(params.n, instances.size(), params.mu,
                                                        params.delta, universe);
    if (sel.final_score > sel.certified_bound && static_cast<double>(sel.final_score) > sel.bound) {
        sel.verdict = HashVerdict::yes_instance;
    }
    return sel;
}

ModulusSelection select_modulus_few_false_positives(const std::vector<ThreeSumInstance>& instances,
                                                    const HashParams& params,
                                                    const HashOptions& options) {
    std::vector<std::vector<Element>> values;
    Element universe = 1;
    for (const auto& inst : instances) {
        values.push_back(inst.elements());
        universe = std::max(universe, inst.universe());
    }
    return select_modulus_few_false_positives(values, universe, params, options);
}

}  // namespace detsum
