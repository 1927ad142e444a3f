#include "detsum/selfreduce.hpp"

#include <algorithm>
#include <stdexcept>

namespace detsum {

namespace {

Element ceil_div(Element a, Element b) { return (a + b - 1) / b; }

std::vector<Element> slice(std::span<const Element> sorted, const Group& g, Element offset) {
    std::vector<Element> out;
    out.reserve(g.size());
    for (std::size_t t = g.lo; t < g.hi; ++t) out.push_back(sorted[t] - offset);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

DominanceReduction dominance_partition(std::span<const Element> sorted, Element universe,
                                       std::size_t g) {
    const std::size_t n = sorted.size();
    if (g < 1) throw std::invalid_argument("dominance_partition: g must be at least 1");
    if (n > 0 && g > n) throw std::invalid_argument("dominance_partition: g exceeds n");
    DominanceReduction red;
    auto& plan = red.plan;
    plan.g_requested = g;
    plan.size_cap = std::max<std::size_t>(1, ceil_div(2 * n, g));
    plan.span_cap = ceil_div(2 * universe, g);

    std::size_t start = 0;
    for (std::size_t t = 1; t <= n; ++t) {
        if (t == n || t - start == plan.size_cap || sorted[t] - sorted[start] > plan.span_cap) {
            plan.groups.push_back({start, t, sorted[start], sorted[t - 1]});
            start = t;
        }
    }

    const auto& groups = plan.groups;
    for (std::uint32_t i = 0; i < groups.size(); ++i) {
        for (std::uint32_t j = 0; j < groups.size(); ++j) {
            const Element lo = groups[i].min + groups[j].min;
            const Element hi = groups[i].max + groups[j].max;
            auto it = std::lower_bound(groups.begin(), groups.end(), lo,
                                       [](const Group& grp, Element key) { return grp.max < key; });
            for (; it != groups.end() && it->min <= hi; ++it) {
                red.r.triples.push_back({i, j, static_cast<std::uint32_t>(it - groups.begin())});
            }
        }
    }
    return red;
}

DominanceReduction dominance_partition(const ThreeSumInstance& inst, std::size_t g) {
    return dominance_partition(std::span<const Element>(inst.elements()), inst.universe(), g);
}

bool is_nontrivial(const PartitionPlan& plan, std::size_t i, std::size_t j, std::size_t k) {
    const auto& gi = plan.groups.at(i);
    const auto& gj = plan.groups.at(j);
    const auto& gk = plan.groups.at(k);
    return gi.min + gj.min <= gk.max && gi.max + gj.max >= gk.min;
}

std::string serialize(const PartitionPlan& plan, const TripleSet& r) {
    std::string out = "PLAN " + std::to_string(plan.g_requested) + "\n";
    for (std::size_t t = 0; t < plan.groups.size(); ++t) {
        if (t > 0) out += ' ';
        out += std::to_string(plan.groups[t].lo) + " " + std::to_string(plan.groups[t].hi);
    }
    out += "\nR\n";
    for (const auto& tr : r.triples) {
        out += std::to_string(tr.i + 1) + " " + std::to_string(tr.j + 1) + " " +
               std::to_string(tr.k + 1) + "\n";
    }
    return out;
}

std::vector<SubInstance> materialize_3sum(std::span<const Element> sorted,
                                          const DominanceReduction& reduction) {
    const auto& groups = reduction.plan.groups;
    std::vector<SubInstance> subs;
    subs.reserve(reduction.r.triples.size());
    for (const auto& tr : reduction.r.triples) {
        const Group& gi = groups[tr.i];
        const Group& gj = groups[tr.j];
        const Group& gk = groups[tr.k];
        const Element oa = gi.min - 1;
        const Element ob = gj.min - 1;
        auto a = slice(sorted, gi, oa);
        auto b = slice(sorted, gj, ob);
        const Element top = a.back() + b.back();
        std::vector<Element> c;
        for (std::size_t t = gk.lo; t < gk.hi; ++t) {
            const Element v = sorted[t];
            if (v < oa + ob + 2) continue;
            const Element shifted = v - oa - ob;
            if (shifted > top) break;
            if (c.empty() || c.back() != shifted) c.push_back(shifted);
        }
        subs.push_back({TriThreeSumInstance(std::move(a), std::move(b), std::move(c), top), tr, oa, ob});
    }
    return subs;
}

std::vector<SubInstance> materialize_an3sum(std::span<const Element> sorted,
                                            const DominanceReduction& reduction) {
    return materialize_3sum(sorted, reduction);
}

std::vector<bool> recombine_an(std::span<const Element> sorted, const DominanceReduction& reduction,
                               const std::vector<SubInstance>& subs,
                               const std::vector<std::vector<bool>>& answers) {
    if (answers.size() != subs.size()) throw std::invalid_argument("recombine_an: answer count mismatch");
    std::vector<bool> out(sorted.size(), false);
    for (std::size_t s = 0; s < subs.size(); ++s) {
        const auto& sub = subs[s];
        const auto& cs = sub.tri.c.elements();
        if (answers[s].size() != cs.size()) throw std::invalid_argument("recombine_an: answer length mismatch");
        const Group& gk = reduction.plan.groups[sub.groups.k];
        for (std::size_t t = 0; t < cs.size(); ++t) {
            if (!answers[s][t]) continue;
            const Element c = cs[t] + sub.offset_a + sub.offset_b;
            const auto first = sorted.begin() + static_cast<std::ptrdiff_t>(gk.lo);
            const auto last = sorted.begin() + static_cast<std::ptrdiff_t>(gk.hi);
            for (auto it = std::lower_bound(first, last, c); it != last && *it == c; ++it) {
                out[static_cast<std::size_t>(it - sorted.begin())] = true;
            }
        }
    }
    return out;
}

std::vector<ChopPiece> trivial_chop(const TriThreeSumInstance& inst, Element u_target) {
    if (u_target < 1) throw std::invalid_argument("trivial_chop: target must be at least 1");
    const Element u = inst.universe();
    const Element count = ceil_div(u, u_target);
    const auto bucket = [&](const ThreeSumInstance& set) {
        std::vector<std::vector<Element>> out(count);
        for (const Element v : set.elements()) out[(v - 1) / u_target].push_back(v);
        return out;
    };
    const auto as = bucket(inst.a);
    const auto bs = bucket(inst.b);
    const auto cs = bucket(inst.c);

    std::vector<ChopPiece> pieces;
    pieces.reserve(count * count * count);
    for (std::uint32_t x = 0; x < count; ++x) {
        for (std::uint32_t y = 0; y < count; ++y) {
            for (std::uint32_t z = 0; z < count; ++z) {
                const Element oa = x * u_target;
                const Element ob = y * u_target;
                std::vector<Element> a, b, c;
                for (const Element v : as[x]) a.push_back(v - oa);
                for (const Element v : bs[y]) b.push_back(v - ob);
                for (const Element v : cs[z]) {
                    if (v < oa + ob + 2) continue;
                    const Element shifted = v - oa - ob;
                    if (shifted <= 2 * u_target) c.push_back(shifted);
                }
                Element universe = u_target;
                if (!c.empty()) universe = std::max(universe, c.back());
                pieces.push_back({TriThreeSumInstance(std::move(a), std::move(b), std::move(c), universe),
                                  x, y, z, oa, ob, 2 * u_target});
            }
        }
    }
    return pieces;
}

std::vector<ChopPiece> trivial_chop(const ThreeSumInstance& inst, Element u_target) {
    return trivial_chop(TriThreeSumInstance(inst.elements(), inst.elements(), inst.elements(),
                                            inst.universe()),
                        u_target);
}

}  // namespace detsum
