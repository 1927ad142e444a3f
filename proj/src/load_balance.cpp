#include "detsum/load_balance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detsum/hashing.hpp"
#include "detsum/ntt.hpp"

namespace detsum {

namespace {

struct Balanced {
    std::vector<std::uint64_t> shifts;
    std::vector<std::vector<Element>> light;
    std::vector<std::vector<Element>> heavy;
    std::vector<LoadStage> trace;
};

Balanced balance_core(const std::vector<std::vector<Element>>& sets, Element u, std::uint64_t threshold) {
    Balanced out;
    std::vector<std::uint64_t> cov1(2 * u, 0), cov2(3 * u, 0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto& set = sets[i];
        for (const Element a : set) {
            if (a < 1 || a > u) throw std::invalid_argument("load balancing: element outside [1, U]");
        }
        std::vector<std::uint64_t> rev(u + 1, 0);
        for (const Element a : set) rev[u - a] = 1;
        std::vector<std::uint64_t> conv1, conv2;
        if (i > 0 && !set.empty()) {
            conv1 = convolve_exact(cov1, rev);
            conv2 = convolve_exact(cov2, rev);
        }
        LoadStage stage;
        stage.stage = i + 1;
        bool first = true;
        for (std::uint64_t s = 0; s < u; ++s) {
            std::uint64_t value = 0;
            if (!conv1.empty()) value = conv1[s + u] + conv2[2 * s + u];
            stage.objective_sum += value;
            if (first || value < stage.objective) {
                stage.objective = value;
                stage.shift = s;
                first = false;
            }
        }
        out.trace.push_back(stage);
        out.shifts.push_back(stage.shift);
        for (const Element a : set) {
            ++cov1[a + stage.shift];
            ++cov2[a + 2 * stage.shift];
        }
    }
    out.light.resize(sets.size());
    out.heavy.resize(sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const std::uint64_t s = out.shifts[i];
        for (const Element a : sets[i]) {
            if (cov1[a + s] <= threshold && cov2[a + 2 * s] <= threshold) {
                out.light[i].push_back(a);
            } else {
                out.heavy[i].push_back(a);
            }
        }
    }
    return out;
}

void check_inputs(const std::vector<std::vector<Element>>& sets, Element universe, double delta) {
    if (universe < 1) throw std::invalid_argument("load balancing: universe must be positive");
    if (!(delta > 0)) throw std::invalid_argument("load balancing: delta must be positive");
    for (const auto& set : sets) {
        if (!std::is_sorted(set.begin(), set.end()) ||
            std::adjacent_find(set.begin(), set.end()) != set.end()) {
            throw std::invalid_argument("load balancing: sets must be sorted and duplicate-free");
        }
    }
}

}  // namespace

std::uint64_t LoadBalanceResult::heavy_total() const {
    std::uint64_t total = 0;
    for (const auto& h : heavy) total += h.size();
    return total;
}

LoadBalanceResult load_balance_slow(const std::vector<std::vector<Element>>& sets, Element universe,
                                    double delta) {
    check_inputs(sets, universe, delta);
    LoadBalanceResult result;
    result.universe = universe;
    if (sets.empty()) return result;
    result.threshold = ceil_power(sets.size(), delta);
    result.load_bound = result.threshold;
    auto core = balance_core(sets, universe, result.threshold);
    result.shifts = std::move(core.shifts);
    result.light = std::move(core.light);
    result.heavy = std::move(core.heavy);
    result.trace = std::move(core.trace);
    return result;
}

LoadBalanceResult load_balance(const std::vector<std::vector<Element>>& sets, Element universe,
                               double delta) {
    check_inputs(sets, universe, delta);
    LoadBalanceResult result;
    result.universe = universe;
    if (sets.empty()) return result;
    const std::size_t n = sets.size();
    const std::size_t b = std::min<std::size_t>(n, ceil_power(n, delta));
    result.bucket_size = b;
    result.load_bound = ceil_power(n, 5.0 * delta);
    result.threshold = std::max<std::uint64_t>(1, result.load_bound / b);

    std::vector<std::vector<Element>> buckets;
    for (std::size_t start = 0; start < n; start += b) {
        std::vector<Element> u;
        for (std::size_t i = start; i < std::min(n, start + b); ++i) u.insert(u.end(), sets[i].begin(), sets[i].end());
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        buckets.push_back(std::move(u));
    }
    auto core = balance_core(buckets, universe, result.threshold);
    result.trace = std::move(core.trace);
    result.light.resize(n);
    result.heavy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = i / b;
        result.shifts.push_back(core.shifts[j]);
        const auto& bl = core.light[j];
        for (const Element a : sets[i]) {
            if (std::binary_search(bl.begin(), bl.end(), a)) {
                result.light[i].push_back(a);
            } else {
                result.heavy[i].push_back(a);
            }
        }
    }
    return result;
}

double heavy_soft_bound(std::size_t n_sets, std::size_t max_size, Element universe, double delta) {
    const double s = static_cast<double>(max_size);
    return std::pow(static_cast<double>(n_sets), 2.0 - delta) * s * s / static_cast<double>(universe);
}

}  // namespace detsum
