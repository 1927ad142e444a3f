#include "detsum/setreduce.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <unistd.h>

#include "detsum/oracle.hpp"
#include "detsum/parallel.hpp"
#include "detsum/unireduce.hpp"

namespace detsum {

namespace {

std::uint64_t ceil_sqrt(std::uint64_t m) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
    while (r * r > m) --r;
    while (r * r < m) ++r;
    return r;
}

/// (residue, value) pairs of one group, sorted.
using ResidueIndex = std::vector<std::pair<std::uint64_t, Element>>;

ResidueIndex index_group(const std::vector<Element>& elements, const Group& g, std::uint64_t m) {
    ResidueIndex out;
    for (std::size_t t = g.lo; t < g.hi; ++t) out.emplace_back(elements[t] % m, elements[t]);
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<ResidueIndex::const_iterator, ResidueIndex::const_iterator> with_residue(
    const ResidueIndex& idx, std::uint64_t residue) {
    const auto lo = std::lower_bound(idx.begin(), idx.end(), std::make_pair(residue, Element{0}));
    auto hi = lo;
    while (hi != idx.end() && hi->first == residue) ++hi;
    return {lo, hi};
}

SetReduction build_family(const ThreeSumInstance& inst, double alpha, double mu, double delta) {
    if (alpha < 0 || alpha >= 1) throw ParameterError("alpha must lie in [0, 1)");
    if (!(delta > 0)) throw ParameterError("delta must be positive");
    if (mu < 0 || mu >= 3) throw ParameterError("derived hashing exponent outside [0, 3)");
    SetReduction out;
    out.mu = mu;
    const auto& elements = inst.elements();
    const std::size_t n = elements.size();
    out.ctx.elements = elements;
    if (n == 0) return out;

    const auto g = std::clamp<std::size_t>(ceil_power(std::max<std::size_t>(n, 2), alpha), 1, n);
    out.ctx.reduction = dominance_partition(inst, g);
    const auto& groups = out.ctx.reduction.plan.groups;
    const auto& triples = out.ctx.reduction.r.triples;

    std::vector<std::vector<Element>> unions;
    unions.reserve(triples.size());
    for (const auto& tr : triples) {
        std::vector<Element> u;
        for (const auto gi : {tr.i, tr.j, tr.k}) {
            u.insert(u.end(), elements.begin() + static_cast<std::ptrdiff_t>(groups[gi].lo),
                     elements.begin() + static_cast<std::ptrdiff_t>(groups[gi].hi));
        }
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        unions.push_back(std::move(u));
    }
    out.n_sub = std::max<std::uint64_t>(2, ceil_power(n, 1.0 - alpha));
    if (!unions.empty()) {
        out.hashing = select_modulus_few_false_positives(unions, inst.universe(), {mu, delta, out.n_sub});
    }
    if (out.hashing.verdict == HashVerdict::yes_instance) {
        out.early_yes = true;
        return out;
    }

    const std::uint64_t m = out.hashing.modulus;
    const std::uint64_t r = ceil_sqrt(m);
    out.ctx.modulus = m;
    out.ctx.radix = r;

    auto& family = out.family;
    family.universe = m;
    const std::size_t ng = groups.size();
    family.sets.resize(2 * ng * (r + 1));
    std::size_t s = 0;
    for (std::size_t i = 0; i < ng; ++i) {
        s = std::max(s, groups[i].size());
        for (std::uint64_t shift = 0; shift <= r; ++shift) {
            std::vector<Element> bset, cset;
            for (std::size_t t = groups[i].lo; t < groups[i].hi; ++t) {
                bset.push_back((elements[t] + shift * r) % m + 1);
                cset.push_back((elements[t] + shift) % m + 1);
            }
            for (auto* set : {&bset, &cset}) {
                std::sort(set->begin(), set->end());
                set->erase(std::unique(set->begin(), set->end()), set->end());
            }
            family.sets[b_set_index(i, shift, r)] = std::move(bset);
            family.sets[c_set_index(i, shift, r, ng)] = std::move(cset);
        }
    }
    family.size_bound = s;

    for (const auto& tr : triples) {
        for (std::size_t t = groups[tr.i].lo; t < groups[tr.i].hi; ++t) {
            const Element a = elements[t];
            const auto d = decompose(a, m, r);
            family.queries.push_back({b_set_index(tr.j, d.x, r), c_set_index(tr.k, d.y, r, ng),
                                      {tr.i, tr.j, tr.k, a}});
            out.ctx.decompositions.push_back(d);
        }
    }
    out.ctx.queries = family.queries;
    out.shape = {m, family.sets.size(), s, family.queries.size()};
    return out;
}

std::string run_command(const std::string& command, const std::string& input) {
    auto path = std::filesystem::temp_directory_path() /
                ("detsum-" + std::to_string(::getpid()) + "-" +
                 std::to_string(reinterpret_cast<std::uintptr_t>(&input)) + ".in");
    {
        std::ofstream file(path, std::ios::binary);
        file << input;
    }
    const std::string full = "(" + command + ") < '" + path.string() + "'";
    FILE* pipe = ::popen(full.c_str(), "r");
    if (!pipe) {
        std::filesystem::remove(path);
        throw std::runtime_error("cannot start external backend: " + command);
    }
    std::string output;
    char buffer[4096];
    std::size_t got = 0;
    while ((got = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, got);
    const int status = ::pclose(pipe);
    std::filesystem::remove(path);
    if (status != 0) throw std::runtime_error("external backend failed: " + command);
    return output;
}

}  // namespace

Decomposition decompose(Element a, std::uint64_t m, std::uint64_t r) {
    const std::uint64_t res = a % m;
    const std::uint64_t x = (res + r - 1) / r;
    return {x, x * r - res};
}

std::size_t b_set_index(std::size_t i, std::uint64_t x, std::uint64_t r) {
    return i * (r + 1) + x;
}

std::size_t c_set_index(std::size_t i, std::uint64_t y, std::uint64_t r, std::size_t groups) {
    return groups * (r + 1) + i * (r + 1) + y;
}

SetReduction build_setdisjointness(const ThreeSumInstance& inst, double alpha, double delta) {
    return build_family(inst, alpha, 2.0 - 2.0 * delta, delta);
}

SetReduction build_setintersection(const ThreeSumInstance& inst, double alpha, double beta,
                                   double delta) {
    if (beta < 0 || beta > 1 - alpha) throw ParameterError("beta must lie in [0, 1 - alpha]");
    const double mu = (1.0 - alpha + beta) / (1.0 - alpha) - 2.0 * delta;
    return build_family(inst, alpha, mu, delta);
}

RecoveryResult recover_and_decide(const RecoveryContext& ctx, const std::vector<QueryAnswer>& answers) {
    if (answers.size() != ctx.queries.size()) {
        throw MalformedAnswer("answer count does not match the query count");
    }
    const std::uint64_t m = ctx.modulus;
    const std::uint64_t r = ctx.radix;
    const auto& groups = ctx.reduction.plan.groups;
    std::vector<ResidueIndex> index(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) index[i] = index_group(ctx.elements, groups[i], m);

    RecoveryResult result;
    for (std::size_t q = 0; q < ctx.queries.size(); ++q) {
        const auto& prov = ctx.queries[q].provenance;
        const auto& d = ctx.decompositions[q];
        for (const Element e : answers[q].intersection) {
            if (e < 1 || e > m) throw MalformedAnswer("reported element outside [1, m]");
            const std::uint64_t res = e - 1;
            const std::uint64_t b_res = (res + m - (d.x * r) % m) % m;
            const std::uint64_t c_res = (res + m - d.y % m) % m;
            const auto [b_lo, b_hi] = with_residue(index[prov.j], b_res);
            const auto [c_lo, c_hi] = with_residue(index[prov.k], c_res);
            if (b_lo == b_hi || c_lo == c_hi) {
                throw MalformedAnswer("query " + std::to_string(q) + " reported element " +
                                      std::to_string(e) + " with no preimage");
            }
            ++result.listed;
            for (auto b = b_lo; b != b_hi; ++b) {
                for (auto c = c_lo; c != c_hi; ++c) {
                    ++result.recovered;
                    if (prov.a + b->second != c->second) continue;
                    const auto cand = SolutionTriple::genuine(prov.a, b->second, c->second);
                    if (!result.witness || cand < *result.witness) result.witness = cand;
                }
            }
        }
    }
    result.decision = result.witness.has_value();
    return result;
}

SplitInstance split_intersection_to_disjointness(const SetQueryInstance& instance, std::size_t t) {
    if (t < 1) throw ParameterError("split threshold t must be at least 1");
    SplitInstance out;
    out.t = t;
    out.chunks = t * t;
    auto& fam = out.family;
    fam.universe = instance.universe;
    fam.size_bound = (instance.size_bound + out.chunks - 1) / out.chunks;
    fam.sets.reserve(instance.sets.size() * out.chunks);
    for (const auto& set : instance.sets) {
        const std::size_t len = set.size();
        for (std::size_t c = 0; c < out.chunks; ++c) {
            const std::size_t lo = c * len / out.chunks;
            const std::size_t hi = (c + 1) * len / out.chunks;
            fam.sets.emplace_back(set.begin() + static_cast<std::ptrdiff_t>(lo),
                                  set.begin() + static_cast<std::ptrdiff_t>(hi));
        }
    }
    fam.queries.reserve(instance.queries.size() * out.chunks * out.chunks);
    for (const auto& q : instance.queries) {
        for (std::size_t cl = 0; cl < out.chunks; ++cl) {
            for (std::size_t cr = 0; cr < out.chunks; ++cr) {
                fam.queries.push_back({q.left * out.chunks + cl, q.right * out.chunks + cr, q.provenance});
            }
        }
    }
    return out;
}

SplitListing list_from_disjointness(const SetQueryInstance& original, const SplitInstance& split,
                                    const std::vector<bool>& disjoint) {
    const std::size_t per_query = split.chunks * split.chunks;
    if (disjoint.size() != original.queries.size() * per_query) {
        throw MalformedAnswer("disjointness answer count does not match the split queries");
    }
    SplitListing out;
    out.answers.resize(original.queries.size());
    out.saturated.assign(original.queries.size(), false);
    for (std::size_t q = 0; q < original.queries.size(); ++q) {
        auto& list = out.answers[q].intersection;
        for (std::size_t p = 0; p < per_query && list.size() < split.t; ++p) {
            if (disjoint[q * per_query + p]) continue;
            const auto& sq = split.family.queries[q * per_query + p];
            const auto& left = split.family.sets[sq.left];
            const auto& right = split.family.sets[sq.right];
            std::vector<Element> common;
            std::set_intersection(left.begin(), left.end(), right.begin(), right.end(),
                                  std::back_inserter(common));
            if (common.empty()) throw MalformedAnswer("disjointness oracle reported a disjoint pair as intersecting");
            for (const Element e : common) {
                if (list.size() == split.t) break;
                list.push_back(e);
            }
        }
        std::sort(list.begin(), list.end());
        out.answers[q].disjoint = list.empty();
        out.saturated[q] = list.size() >= split.t;
    }
    return out;
}

DisjointnessOracle oracle_disjointness() {
    return [](const SetQueryInstance& fam) {
        const auto answers = solve_set_queries(fam);
        std::vector<bool> out;
        out.reserve(answers.size());
        for (const auto& a : answers) out.push_back(a.disjoint);
        return out;
    };
}

IntersectionOracle oracle_intersection() {
    return [](const SetQueryInstance& fam) { return solve_set_queries(fam); };
}

IntersectionOracle external_intersection(std::string command) {
    return [command](const SetQueryInstance& fam) {
        return parse_answers(run_command(command, serialize(fam)), fam.queries.size());
    };
}

DisjointnessOracle external_disjointness(std::string command) {
    return [command](const SetQueryInstance& fam) {
        const auto answers = parse_answers(run_command(command, serialize(fam)), fam.queries.size());
        std::vector<bool> out;
        out.reserve(answers.size());
        for (const auto& a : answers) out.push_back(a.disjoint);
        return out;
    };
}

SetDriverResult solve_3sum_via_setdisjointness(const ThreeSumInstance& inst, double alpha, double rho,
                                               const DisjointnessOracle& oracle,
                                               std::optional<double> delta) {
    if (!(rho > 0)) throw ParameterError("rho must be positive");
    const double d = delta ? *delta : std::min((1.0 - alpha) / 2.0, rho / 4.0);
    SetDriverResult out;
    auto red = build_setdisjointness(inst, alpha, d);
    out.hashing = red.hashing;
    out.shape = red.shape;
    out.early_yes = red.early_yes;
    if (red.early_yes) {
        out.decision = true;
        return out;
    }
    if (inst.empty()) return out;

    out.t = ceil_power(std::max<std::size_t>(inst.size(), 2), rho);
    const auto split = split_intersection_to_disjointness(red.family, out.t);
    out.split_queries = split.family.queries.size();
    const auto flags = oracle(split.family);
    auto listing = list_from_disjointness(red.family, split, flags);
    for (std::size_t q = 0; q < red.family.queries.size(); ++q) {
        if (!listing.saturated[q]) continue;
        ++out.saturated;
        const auto& query = red.family.queries[q];
        const auto& left = red.family.sets[query.left];
        const auto& right = red.family.sets[query.right];
        auto& list = listing.answers[q].intersection;
        list.clear();
        std::set_intersection(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(list));
    }
    const auto rec = recover_and_decide(red.ctx, listing.answers);
    out.decision = rec.decision;
    out.witness = rec.witness;
    out.listed = rec.listed;
    out.recovered = rec.recovered;
    return out;
}

SetDriverResult solve_3sum_via_setintersection(const ThreeSumInstance& inst, double alpha, double beta,
                                               const IntersectionOracle& oracle,
                                               std::optional<double> delta) {
    const double d = delta ? *delta : std::min((1.0 - alpha) / 2.0, 1.0 / 14.0);
    SetDriverResult out;
    auto red = build_setintersection(inst, alpha, beta, d);
    out.hashing = red.hashing;
    out.shape = red.shape;
    out.early_yes = red.early_yes;
    if (red.early_yes) {
        out.decision = true;
        return out;
    }
    if (inst.empty()) return out;
    const auto answers = oracle(red.family);
    const auto rec = recover_and_decide(red.ctx, answers);
    out.decision = rec.decision;
    out.witness = rec.witness;
    out.listed = rec.listed;
    out.recovered = rec.recovered;
    return out;
}

}  // namespace detsum
