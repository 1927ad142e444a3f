#include "detsum/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace detsum {

namespace {

/// Solution with the smallest a and, for that a, the largest b; a in `as`,
/// b in `bs`, a + b in `cs`, all three ascending and duplicate-free.
std::optional<SolutionTriple> first_solution(const std::vector<Element>& as,
                                             const std::vector<Element>& bs,
                                             const std::vector<Element>& cs) {
    for (const Element a : as) {
        std::size_t t = cs.size();
        for (auto it = bs.rbegin(); it != bs.rend(); ++it) {
            const Element target = a + *it;
            while (t > 0 && cs[t - 1] > target) --t;
            if (t == 0) break;
            if (cs[t - 1] == target) return SolutionTriple::genuine(a, *it, target);
        }
    }
    return std::nullopt;
}

std::vector<SolutionTriple> all_solutions(const std::vector<Element>& as,
                                          const std::vector<Element>& bs,
                                          const std::vector<Element>& cs) {
    std::vector<SolutionTriple> out;
    for (const Element a : as) {
        std::size_t t = 0;
        for (const Element b : bs) {
            const Element target = a + b;
            while (t < cs.size() && cs[t] < target) ++t;
            if (t == cs.size()) break;
            if (cs[t] == target) out.push_back(SolutionTriple::genuine(a, b, target));
        }
    }
    return out;
}

std::vector<Element> distinct_values(const MultisetInstance& inst) {
    std::vector<Element> out;
    out.reserve(inst.entries().size());
    for (const auto& e : inst.entries()) out.push_back(e.value);
    return out;
}

/// flag[t] iff cs[t] = a + b, a in as, b in bs; two pointers per target.
std::vector<bool> an_flags(const std::vector<Element>& as, const std::vector<Element>& bs,
                           const std::vector<Element>& cs) {
    std::vector<bool> flags(cs.size(), false);
    if (as.empty() || bs.empty()) return flags;
    for (std::size_t t = 0; t < cs.size(); ++t) {
        const Element c = cs[t];
        std::size_t i = 0;
        std::size_t j = bs.size();
        while (i < as.size() && j > 0) {
            const Element sum = as[i] + bs[j - 1];
            if (sum == c) {
                flags[t] = true;
                break;
            }
            if (sum < c) {
                ++i;
            } else {
                --j;
            }
        }
    }
    return flags;
}

}  // namespace

std::optional<SolutionTriple> solve_3sum(const ThreeSumInstance& inst) {
    const auto& e = inst.elements();
    return first_solution(e, e, e);
}

std::optional<SolutionTriple> solve_3sum(const MultisetInstance& inst) {
    const auto e = distinct_values(inst);
    return first_solution(e, e, e);
}

std::optional<SolutionTriple> solve_3sum(const TriThreeSumInstance& inst) {
    return first_solution(inst.a.elements(), inst.b.elements(), inst.c.elements());
}

std::vector<SolutionTriple> list_solutions(const ThreeSumInstance& inst) {
    const auto& e = inst.elements();
    return all_solutions(e, e, e);
}

std::vector<SolutionTriple> list_solutions(const TriThreeSumInstance& inst) {
    return all_solutions(inst.a.elements(), inst.b.elements(), inst.c.elements());
}

std::vector<bool> solve_an3sum(const ThreeSumInstance& inst) {
    const auto& e = inst.elements();
    return an_flags(e, e, e);
}

std::vector<bool> solve_an3sum(const MultisetInstance& inst) {
    const auto e = distinct_values(inst);
    return an_flags(e, e, e);
}

std::vector<bool> solve_an3sum(const TriThreeSumInstance& inst) {
    return an_flags(inst.a.elements(), inst.b.elements(), inst.c.elements());
}

std::vector<bool> solve_conv3sum(const ConvThreeSumInstance& inst) {
    const auto& x = inst.values();
    const std::size_t n = x.size();
    std::vector<bool> flags(n, false);
    for (std::size_t k = 2; k <= n; ++k) {
        for (std::size_t i = 1; i < k; ++i) {
            if (x[i - 1] + x[k - i - 1] == x[k - 1]) {
                flags[k - 1] = true;
                break;
            }
        }
    }
    return flags;
}

std::uint64_t count_pseudo_bruteforce(std::span<const Element> values, std::uint64_t m) {
    if (m == 0) throw std::invalid_argument("count_pseudo_bruteforce: modulus must be positive");
    std::vector<std::uint64_t> r;
    r.reserve(values.size());
    for (const Element v : values) r.push_back(v % m);
    std::uint64_t total = 0;
    for (const auto ra : r) {
        for (const auto rb : r) {
            const std::uint64_t target = (ra + rb) % m;
            for (const auto rc : r) total += rc == target ? 1 : 0;
        }
    }
    return total;
}

std::uint64_t count_pseudo_bruteforce(const ThreeSumInstance& inst, std::uint64_t m) {
    return count_pseudo_bruteforce(std::span<const Element>(inst.elements()), m);
}

std::uint64_t count_pseudo_bruteforce(const MultisetInstance& inst, std::uint64_t m) {
    const auto values = inst.expanded();
    return count_pseudo_bruteforce(std::span<const Element>(values), m);
}

std::vector<QueryAnswer> solve_set_queries(const SetQueryInstance& family) {
    std::vector<QueryAnswer> answers;
    answers.reserve(family.queries.size());
    for (const auto& q : family.queries) {
        if (q.left >= family.sets.size() || q.right >= family.sets.size()) {
            throw std::out_of_range("solve_set_queries: set index out of range");
        }
        const auto& s = family.sets[q.left];
        const auto& t = family.sets[q.right];
        QueryAnswer ans;
        std::set_intersection(s.begin(), s.end(), t.begin(), t.end(),
                              std::back_inserter(ans.intersection));
        ans.disjoint = ans.intersection.empty();
        answers.push_back(std::move(ans));
    }
    return answers;
}

std::vector<bool> solve_monoconv(const MonoConvInstance& inst) {
    const std::size_t n = inst.x.size();
    if (inst.y.size() != n || inst.z.size() != n) {
        throw std::invalid_argument("solve_monoconv: X, Y, Z lengths differ");
    }
    // X positions grouped by value; only i with X[i] = Z[k] can witness k.
    std::vector<std::pair<std::int64_t, std::size_t>> by_value;
    by_value.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) by_value.emplace_back(inst.x[i - 1], i);
    std::sort(by_value.begin(), by_value.end());
    std::vector<bool> flags(n, false);
    for (std::size_t k = 2; k <= n; ++k) {
        const auto target = inst.z[k - 1];
        auto it = std::lower_bound(by_value.begin(), by_value.end(), std::make_pair(target, std::size_t{0}));
        for (; it != by_value.end() && it->first == target && it->second < k; ++it) {
            if (inst.y[k - it->second - 1] == target) {
                flags[k - 1] = true;
                break;
            }
        }
    }
    return flags;
}

NaiveWitnessStructure::NaiveWitnessStructure(std::vector<std::uint8_t> x, std::vector<std::uint8_t> y)
    : x_(std::move(x)), y_(std::move(y)) {
    if (x_.size() != y_.size()) {
        throw std::invalid_argument("NaiveWitnessStructure: vectors differ in length");
    }
}

std::vector<Witness> NaiveWitnessStructure::query(std::size_t k) const {
    const std::size_t n = x_.size();
    if (k < 2 || k > 2 * n) throw std::out_of_range("witness query index outside [2, 2n]");
    std::vector<Witness> out;
    const std::size_t lo = k > n ? k - n : 1;
    const std::size_t hi = std::min(n, k - 1);
    for (std::size_t i = lo; i <= hi; ++i) {
        if (x_[i - 1] && y_[k - i - 1]) out.emplace_back(i, k - i);
    }
    return out;
}

WitnessFactory naive_witness_factory() {
    return [](const std::vector<std::uint8_t>& x, const std::vector<std::uint8_t>& y) {
        return std::make_unique<NaiveWitnessStructure>(x, y);
    };
}

}  // namespace detsum
