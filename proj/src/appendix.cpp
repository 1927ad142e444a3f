#include "detsum/appendix.hpp"

#include <algorithm>
#include <mutex>

#include "detsum/parallel.hpp"
#include "detsum/selfreduce.hpp"

namespace detsum {

namespace {

std::vector<Element> in_range(const std::vector<Element>& set, Element lo, Element hi, Element offset) {
    std::vector<Element> out;
    for (auto it = std::lower_bound(set.begin(), set.end(), lo); it != set.end() && *it <= hi; ++it) {
        out.push_back(*it - offset);
    }
    return out;
}

bool has(const std::vector<Element>& sorted, Element v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

std::vector<Element> intersect(const std::vector<Element>& a, const std::vector<Element>& b) {
    std::vector<Element> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

/// One re-based trichromatic subinstance of the self-reduction.
struct Part {
    std::vector<Element> a, b, c;
    Element offset = 0;  ///< offset_a + offset_b, added back to c
};

}  // namespace

std::vector<bool> monoconv_stage(const TriThreeSumInstance& inst, const MonoConvSolver& solver,
                                 const MonoConvParams& params, MonoConvStats& stats) {
    const auto& as = inst.a.elements();
    const auto& bs = inst.b.elements();
    const auto& cs = inst.c.elements();
    std::vector<bool> answers(cs.size(), false);
    ++stats.stages;
    if (as.empty() || bs.empty() || cs.empty()) return answers;

    std::vector<Element> all(as);
    all.insert(all.end(), bs.begin(), bs.end());
    all.insert(all.end(), cs.begin(), cs.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    const std::size_t n = std::max({as.size(), bs.size(), cs.size()});
    const std::size_t g = std::clamp<std::size_t>(ceil_power(std::max<std::size_t>(n, 2), 1.0 / 3.0), 1, all.size());
    const auto red = dominance_partition(std::span<const Element>(all), inst.universe(), g);
    const auto& groups = red.plan.groups;

    std::vector<Part> parts;
    for (const auto& tr : red.r.triples) {
        const Group& gi = groups[tr.i];
        const Group& gj = groups[tr.j];
        const Group& gk = groups[tr.k];
        Part p;
        const Element oa = gi.min - 1;
        const Element ob = gj.min - 1;
        p.a = in_range(as, gi.min, gi.max, oa);
        p.b = in_range(bs, gj.min, gj.max, ob);
        if (p.a.empty() || p.b.empty()) continue;
        const Element top = p.a.back() + p.b.back();
        for (const Element c : in_range(cs, gk.min, gk.max, 0)) {
            if (c >= oa + ob + 2 && c - oa - ob <= top) p.c.push_back(c - oa - ob);
        }
        if (p.c.empty()) continue;
        p.offset = oa + ob;
        parts.push_back(std::move(p));
    }
    stats.subinstances += parts.size();
    if (parts.empty()) return answers;

    std::vector<std::vector<Element>> unions;
    Element u = 1;
    std::size_t s_max = 0;
    for (const auto& p : parts) {
        std::vector<Element> t(p.a);
        t.insert(t.end(), p.b.begin(), p.b.end());
        t.insert(t.end(), p.c.begin(), p.c.end());
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        u = std::max(u, t.back());
        s_max = std::max(s_max, t.size());
        unions.push_back(std::move(t));
    }
    const auto lb = params.bucketed ? load_balance(unions, u, params.delta)
                                    : load_balance_slow(unions, u, params.delta);
    stats.heavy_total += lb.heavy_total();
    stats.heavy_soft_bound += heavy_soft_bound(unions.size(), s_max, u, params.delta);
    stats.brute_pair_bound += 3 * s_max * lb.heavy_total();

    // Position v (1-based, v <= 3U) -> ascending part indices per role.
    const std::size_t len = 3 * u;
    std::vector<std::vector<std::int64_t>> xl(len + 1), yl(len + 1), zl(len + 1);
    std::vector<std::uint64_t> load1(len + 1, 0), load2(len + 1, 0);
    for (std::size_t t = 0; t < parts.size(); ++t) {
        const std::uint64_t s = lb.shifts[t];
        const auto& light = lb.light[t];
        for (const Element v : light) {
            ++load1[v + s];
            ++load2[v + 2 * s];
        }
        const auto idx = static_cast<std::int64_t>(t);
        for (const Element v : intersect(parts[t].a, light)) xl[v + s].push_back(idx);
        for (const Element v : intersect(parts[t].b, light)) yl[v + s].push_back(idx);
        for (const Element v : intersect(parts[t].c, light)) zl[v + 2 * s].push_back(idx);
    }
    for (std::size_t v = 0; v <= len; ++v) {
        if (load1[v] > lb.load_bound || load2[v] > lb.load_bound) stats.loads_ok = false;
    }

    const auto depth = [](const std::vector<std::vector<std::int64_t>>& lists) {
        std::size_t d = 0;
        for (const auto& l : lists) d = std::max(d, l.size());
        return d;
    };
    const std::size_t dx = depth(xl), dy = depth(yl), dz = depth(zl);
    const auto layer = [len](const std::vector<std::vector<std::int64_t>>& lists, std::size_t x,
                             std::int64_t sentinel) {
        std::vector<std::int64_t> out(len, sentinel);
        for (std::size_t v = 1; v <= len; ++v) {
            if (lists[v].size() > x) out[v - 1] = lists[v][x];
        }
        return out;
    };

    std::vector<Element> marked;
    for (std::size_t x = 0; x < dx; ++x) {
        for (std::size_t y = 0; y < dy; ++y) {
            for (std::size_t z = 0; z < dz; ++z) {
                MonoConvInstance mc{layer(xl, x, MonoConvInstance::kSentinelX),
                                    layer(yl, y, MonoConvInstance::kSentinelY),
                                    layer(zl, z, MonoConvInstance::kSentinelZ)};
                ++stats.grid_cells;
                const auto flags = solver(mc);
                if (flags.size() != len) throw InvariantViolation("mono-conv solver returned wrong length");
                for (std::size_t k = 1; k <= len; ++k) {
                    if (!flags[k - 1]) continue;
                    ++stats.reports;
                    const auto t = mc.z[k - 1];
                    if (t < 0) throw InvariantViolation("mono-conv solver flagged a sentinel index");
                    const auto& p = parts[static_cast<std::size_t>(t)];
                    const std::uint64_t s2 = 2 * lb.shifts[static_cast<std::size_t>(t)];
                    const Element c = k - s2;
                    bool ok = false;
                    for (const Element a : p.a) ok = ok || (a < c && has(p.b, c - a));
                    if (!ok) throw InvariantViolation("mono-conv report does not lift to a solution");
                    marked.push_back(c + p.offset);
                }
            }
        }
    }

    for (std::size_t t = 0; t < parts.size(); ++t) {
        const auto& p = parts[t];
        const auto& heavy = lb.heavy[t];
        for (const Element a : intersect(p.a, heavy)) {
            for (const Element b : p.b) {
                ++stats.brute_pairs;
                if (has(p.c, a + b)) marked.push_back(a + b + p.offset);
            }
        }
        for (const Element b : intersect(p.b, heavy)) {
            for (const Element a : p.a) {
                ++stats.brute_pairs;
                if (has(p.c, a + b)) marked.push_back(a + b + p.offset);
            }
        }
        for (const Element c : intersect(p.c, heavy)) {
            for (const Element a : p.a) {
                ++stats.brute_pairs;
                if (a < c && has(p.b, c - a)) marked.push_back(c + p.offset);
            }
        }
    }
    std::sort(marked.begin(), marked.end());
    for (std::size_t t = 0; t < cs.size(); ++t) answers[t] = has(marked, cs[t]);
    return answers;
}

MonoConvResult reduce_3sum_to_monoconv(const ThreeSumInstance& inst, const MonoConvSolver& solver,
                                       const MonoConvParams& params) {
    if (!(params.delta > 0)) throw ParameterError("delta must be positive");
    MonoConvResult result;
    std::mutex lock;
    std::vector<double> soft;
    const TriAnSolver stage = [&](const TriThreeSumInstance& piece) {
        MonoConvStats local;
        auto answers = monoconv_stage(piece, solver, params, local);
        std::lock_guard guard(lock);
        auto& st = result.stats;
        st.stages += local.stages;
        st.subinstances += local.subinstances;
        st.grid_cells += local.grid_cells;
        st.reports += local.reports;
        st.heavy_total += local.heavy_total;
        st.brute_pairs += local.brute_pairs;
        st.brute_pair_bound += local.brute_pair_bound;
        soft.push_back(local.heavy_soft_bound);
        st.loads_ok = st.loads_ok && local.loads_ok;
        return answers;
    };
    auto an = reduce_an3sum_quadratic(inst, stage, params.universe);
    std::sort(soft.begin(), soft.end());
    for (const double v : soft) result.stats.heavy_soft_bound += v;
    result.answers = std::move(an.answers);
    result.hashing = std::move(an.hashing);
    result.decision = std::any_of(result.answers.begin(), result.answers.end(), [](bool b) { return b; });
    return result;
}

// ---------------------------------------------------------------------------

WitnessResult solve_3sum_via_witness_ds(const ThreeSumInstance& inst, const WitnessFactory& factory,
                                        const WitnessParams& params) {
    if (!(params.alpha > 0 && params.alpha < 1)) throw ParameterError("alpha must lie in (0, 1)");
    if (!(params.delta > 0 && params.delta <= params.alpha / 2)) {
        throw ParameterError("delta must lie in (0, alpha / 2]");
    }
    WitnessResult result;
    const auto& elements = inst.elements();
    if (elements.empty()) return result;
    const std::uint64_t scale = std::max<std::uint64_t>(2, elements.size());

    HashOptions first_opts;
    first_opts.bound = params.bound;
    result.first = select_modulus_few_false_positives({inst}, {1.0, params.delta, scale}, first_opts);
    HashOptions second_opts = first_opts;
    second_opts.base_modulus = result.first.modulus;
    result.second = select_modulus_few_false_positives(
        {inst}, {params.alpha / 2 - params.delta, params.delta, scale}, second_opts);
    if (result.first.verdict == HashVerdict::yes_instance ||
        result.second.verdict == HashVerdict::yes_instance) {
        result.decision = true;
        result.early_yes = true;
        return result;
    }
    const std::uint64_t m1 = result.first.modulus;
    const std::uint64_t m2 = result.second.modulus;
    result.pseudo_bound = result.second.final_score;

    // Elements bucketed by (a mod m2, a mod m1).
    std::vector<std::vector<std::vector<Element>>> bucket(m2);
    std::vector<std::vector<std::uint8_t>> indicator(m2, std::vector<std::uint8_t>(2 * m1, 0));
    for (auto& b : bucket) b.resize(m1);
    for (const Element a : elements) {
        bucket[a % m2][a % m1].push_back(a);
        indicator[a % m2][a % m1] = 1;
    }

    struct PairStats {
        std::uint64_t queries = 0, witnesses = 0, expanded = 0;
        std::optional<SolutionTriple> found;
        bool used = false;
    };
    std::vector<PairStats> per(m2 * m2);
    parallel_for(m2 * m2, [&](std::size_t idx) {
        const std::uint64_t x = idx / m2;
        const std::uint64_t y = idx % m2;
        bool any_x = false, any_y = false;
        for (const auto& v : bucket[x]) any_x = any_x || !v.empty();
        for (const auto& v : bucket[y]) any_y = any_y || !v.empty();
        if (!any_x || !any_y) return;
        auto& st = per[idx];
        st.used = true;
        const auto ds = factory(indicator[x], indicator[y]);
        for (const Element c : elements) {
            if (c % m2 != (x + y) % m2) continue;
            const std::uint64_t k = c % m1;
            for (const std::uint64_t q : {k + 2, k + m1 + 2}) {
                ++st.queries;
                for (const auto& [i, j] : ds->query(q)) {
                    ++st.witnesses;
                    if (i > m1 || j > m1) throw InvariantViolation("witness outside the occupied half");
                    for (const Element a : bucket[x][i - 1]) {
                        for (const Element b : bucket[y][j - 1]) {
                            ++st.expanded;
                            if (a + b != c) continue;
                            const auto cand = SolutionTriple::genuine(a, b, c);
                            if (!st.found || cand < *st.found) st.found = cand;
                        }
                    }
                }
            }
        }
    });
    for (const auto& st : per) {
        result.pairs += st.used ? 1 : 0;
        result.queries += st.queries;
        result.witnesses += st.witnesses;
        result.expanded += st.expanded;
        if (st.found && (!result.witness || *st.found < *result.witness)) result.witness = st.found;
    }
    result.decision = result.witness.has_value();
    return result;
}

}  // namespace detsum
