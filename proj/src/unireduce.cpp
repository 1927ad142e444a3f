#include "detsum/unireduce.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "detsum/parallel.hpp"
#include "detsum/selfreduce.hpp"

namespace detsum {

namespace {

/// A' = {r, r + m : a in A} with r = ((a - 1) mod m) + 1, sorted by value
/// and remembering which a produced each entry.
struct ResidueMultiset {
    std::vector<Element> values;
    std::vector<Element> origin;
};

ResidueMultiset lift_residues(const std::vector<Element>& elements, std::uint64_t m) {
    std::vector<std::pair<Element, Element>> pairs;
    pairs.reserve(2 * elements.size());
    for (const Element a : elements) {
        const Element r = (a - 1) % m + 1;
        pairs.emplace_back(r, a);
        pairs.emplace_back(r + m, a);
    }
    std::sort(pairs.begin(), pairs.end());
    ResidueMultiset out;
    for (const auto& [v, a] : pairs) {
        out.values.push_back(v);
        out.origin.push_back(a);
    }
    return out;
}

Element scaled_power(double c, std::uint64_t n, double e) {
    const double v = c * std::pow(static_cast<double>(n), e);
    return std::max<Element>(1, static_cast<Element>(std::ceil(v)));
}

void check_cubic(double mu, double delta, double alpha) {
    if (!(delta > 0)) throw ParameterError("delta must be positive");
    if (mu < 0 || mu >= 3) throw ParameterError("mu must lie in [0, 3)");
    if (alpha < 0 || alpha > 1) throw ParameterError("alpha must lie in [0, 1]");
}

std::size_t group_count(std::size_t n, double alpha, std::size_t cap) {
    const auto g = static_cast<std::size_t>(ceil_power(std::max<std::size_t>(n, 1), alpha));
    return std::clamp<std::size_t>(g, 1, std::max<std::size_t>(cap, 1));
}

/// Calls visit(pa, pb, pc) for every position triple of groups (i, j, k)
/// with values[pa] + values[pb] = values[pc].
template <class Visit>
void for_each_lifted_triple(const std::vector<Element>& values, const Group& gi, const Group& gj,
                            const Group& gk, Visit&& visit) {
    const auto first = values.begin() + static_cast<std::ptrdiff_t>(gk.lo);
    const auto last = values.begin() + static_cast<std::ptrdiff_t>(gk.hi);
    for (std::size_t pa = gi.lo; pa < gi.hi; ++pa) {
        for (std::size_t pb = gj.lo; pb < gj.hi; ++pb) {
            const Element s = values[pa] + values[pb];
            for (auto it = std::lower_bound(first, last, s); it != last && *it == s; ++it) {
                visit(pa, pb, static_cast<std::size_t>(it - values.begin()));
            }
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------

CubicResult reduce_3sum_cubic(const ThreeSumInstance& inst, const TriDecisionSolver& solver,
                              const CubicParams& params) {
    check_cubic(params.mu, params.delta, params.alpha);
    CubicResult result;
    const std::size_t n = inst.size();
    if (n == 0) return result;
    const std::uint64_t scale = std::max<std::uint64_t>(2, n);

    HashOptions hopts;
    hopts.bound = params.bound;
    result.hashing = select_modulus_few_false_positives({inst}, {params.mu, params.delta, scale}, hopts);
    if (result.hashing.verdict == HashVerdict::yes_instance) {
        result.decision = true;
        result.early_yes = true;
        return result;
    }
    const std::uint64_t m = result.hashing.modulus;

    const auto lifted = lift_residues(inst.elements(), m);
    const std::size_t g = group_count(n, params.alpha, lifted.values.size());
    const auto red = dominance_partition(std::span<const Element>(lifted.values), 2 * m, g);
    const auto subs = materialize_3sum(std::span<const Element>(lifted.values), red);
    result.groups = red.plan.groups.size();
    result.subinstances = subs.size();
    result.chop_target = scaled_power(params.chop_constant, n, 3.0 - 3.0 * params.alpha);

    std::vector<std::uint8_t> positive(subs.size(), 0);
    std::vector<std::size_t> pieces(subs.size(), 0);
    std::vector<std::uint8_t> caps(subs.size(), 1);
    parallel_for(subs.size(), [&](std::size_t s) {
        for (const auto& piece : trivial_chop(subs[s].tri, result.chop_target)) {
            ++pieces[s];
            if (piece.tri.universe() > piece.declared_target) caps[s] = 0;
            if (!positive[s] && solver(piece.tri)) positive[s] = 1;
        }
    });

    std::vector<std::uint64_t> enumerated(subs.size(), 0);
    std::vector<std::optional<SolutionTriple>> found(subs.size());
    parallel_for(subs.size(), [&](std::size_t s) {
        if (!positive[s]) return;
        const auto& groups = red.plan.groups;
        const auto& tr = subs[s].groups;
        for_each_lifted_triple(lifted.values, groups[tr.i], groups[tr.j], groups[tr.k],
                               [&](std::size_t pa, std::size_t pb, std::size_t pc) {
                                   ++enumerated[s];
                                   const Element a = lifted.origin[pa];
                                   const Element b = lifted.origin[pb];
                                   const Element c = lifted.origin[pc];
                                   if (a + b != c) return;
                                   const auto cand = SolutionTriple::genuine(a, b, c);
                                   if (!found[s] || cand < *found[s]) found[s] = cand;
                               });
    });

    for (std::size_t s = 0; s < subs.size(); ++s) {
        result.chop_pieces += pieces[s];
        result.positive_subinstances += positive[s];
        result.enumerated += enumerated[s];
        result.caps_ok = result.caps_ok && caps[s];
        if (found[s] && (!result.witness || *found[s] < *result.witness)) result.witness = found[s];
    }
    result.decision = result.witness.has_value();
    return result;
}

// ---------------------------------------------------------------------------

AnResult reduce_an3sum_quadratic(const ThreeSumInstance& inst, const TriAnSolver& solver,
                                 const AnParams& params) {
    check_cubic(params.mu, params.delta, params.alpha);
    AnResult result;
    const std::size_t n = inst.size();
    result.answers.assign(n, false);
    if (n == 0) return result;
    const std::uint64_t scale = std::max<std::uint64_t>(2, n);

    result.hashing = select_modulus_few_false_positives({inst}, {params.mu, params.delta, scale});
    const std::uint64_t m = result.hashing.modulus;

    const auto lifted = lift_residues(inst.elements(), m);
    const std::size_t g = group_count(n, params.alpha, lifted.values.size());
    const auto red = dominance_partition(std::span<const Element>(lifted.values), 2 * m, g);
    const auto subs = materialize_an3sum(std::span<const Element>(lifted.values), red);
    result.groups = red.plan.groups.size();
    result.subinstances = subs.size();
    result.chop_target = scaled_power(params.chop_constant, n, 2.0 - 2.0 * params.alpha);

    // Per sub: the sub-level C values the solver flagged.
    std::vector<std::vector<Element>> flagged(subs.size());
    std::vector<std::size_t> pieces(subs.size(), 0);
    std::vector<std::uint8_t> caps(subs.size(), 1);
    parallel_for(subs.size(), [&](std::size_t s) {
        for (const auto& piece : trivial_chop(subs[s].tri, result.chop_target)) {
            ++pieces[s];
            if (piece.tri.universe() > piece.declared_target) caps[s] = 0;
            const auto& cs = piece.tri.c.elements();
            if (cs.empty() || piece.tri.a.empty() || piece.tri.b.empty()) continue;
            const auto flags = solver(piece.tri);
            if (flags.size() != cs.size()) throw InvariantViolation("AN solver returned wrong length");
            for (std::size_t t = 0; t < cs.size(); ++t) {
                if (flags[t]) flagged[s].push_back(cs[t] + piece.offset_a + piece.offset_b);
            }
        }
        std::sort(flagged[s].begin(), flagged[s].end());
    });

    std::vector<std::vector<Element>> hits(subs.size());
    std::vector<std::uint64_t> enumerated(subs.size(), 0);
    std::vector<std::uint64_t> flagged_positions(subs.size(), 0);
    parallel_for(subs.size(), [&](std::size_t s) {
        if (flagged[s].empty()) return;
        const auto& sub = subs[s];
        const auto& groups = red.plan.groups;
        const Group& gi = groups[sub.groups.i];
        const Group& gj = groups[sub.groups.j];
        const Group& gk = groups[sub.groups.k];
        for (std::size_t pc = gk.lo; pc < gk.hi; ++pc) {
            const Element target = lifted.values[pc] - sub.offset_a - sub.offset_b;
            if (!std::binary_search(flagged[s].begin(), flagged[s].end(), target)) continue;
            ++flagged_positions[s];
            const Element cv = lifted.values[pc];
            for (std::size_t pa = gi.lo; pa < gi.hi; ++pa) {
                if (lifted.values[pa] >= cv) break;
                const Element want = cv - lifted.values[pa];
                const auto first = lifted.values.begin() + static_cast<std::ptrdiff_t>(gj.lo);
                const auto last = lifted.values.begin() + static_cast<std::ptrdiff_t>(gj.hi);
                for (auto it = std::lower_bound(first, last, want); it != last && *it == want; ++it) {
                    ++enumerated[s];
                    const auto pb = static_cast<std::size_t>(it - lifted.values.begin());
                    if (lifted.origin[pa] + lifted.origin[pb] == lifted.origin[pc]) {
                        hits[s].push_back(lifted.origin[pc]);
                    }
                }
            }
        }
    });

    const auto& elements = inst.elements();
    for (std::size_t s = 0; s < subs.size(); ++s) {
        result.chop_pieces += pieces[s];
        result.enumerated += enumerated[s];
        result.flagged += flagged_positions[s];
        result.caps_ok = result.caps_ok && caps[s];
        for (const Element c : hits[s]) {
            const auto it = std::lower_bound(elements.begin(), elements.end(), c);
            result.answers[static_cast<std::size_t>(it - elements.begin())] = true;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

ConvThreeSumInstance tri_conv_to_mono(const std::vector<Element>& x, const std::vector<Element>& y,
                                      const std::vector<Element>& z) {
    const std::size_t m = x.size();
    if (m == 0 || y.size() != m || z.size() != 2 * m - 1) {
        throw std::invalid_argument("tri_conv_to_mono: need |X| = |Y| = m and |Z| = 2m - 1");
    }
    Element v = 1;
    for (const auto* vec : {&x, &y, &z}) {
        for (const Element e : *vec) {
            if (e < 1) throw std::invalid_argument("tri_conv_to_mono: entries must be positive");
            v = std::max(v, e);
        }
    }
    const Element d = 2 * v + 1;
    if (d > kMaxUniverse / 100) throw std::overflow_error("tri_conv_to_mono: entries too large");
    std::vector<Element> w(5 * m, 100 * d);
    for (std::size_t p = 0; p < m; ++p) {
        w[m + p] = d + x[p];
        w[2 * m + p] = 10 * d + y[p];
    }
    for (std::size_t r = 0; r + 1 < 2 * m; ++r) w[3 * m + 1 + r] = 11 * d + z[r];
    return ConvThreeSumInstance(std::move(w), 100 * d);
}

ConvResult conv_stage(const TriThreeSumInstance& inst, const ConvSolver& solver, double heavy_exponent) {
    if (!(heavy_exponent > 0)) throw ParameterError("heavy exponent must be positive");
    ConvResult result;
    result.stages = 1;
    const auto& as = inst.a.elements();
    const auto& bs = inst.b.elements();
    const auto& cs = inst.c.elements();
    if (as.empty() || bs.empty() || cs.empty()) return result;
    const std::size_t n = std::max({as.size(), bs.size(), cs.size()});
    const std::uint64_t scale = std::max<std::uint64_t>(2, n);

    std::vector<Element> all(as);
    all.insert(all.end(), bs.begin(), bs.end());
    all.insert(all.end(), cs.begin(), cs.end());
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    const auto sel = select_modulus_few_collisions(std::span<const Element>(all), {1.0, 0.5, scale});
    const std::uint64_t m = sel.modulus;
    result.modulus = m;
    const std::size_t t = ceil_power(scale, heavy_exponent);

    const auto buckets = [m](const std::vector<Element>& set) {
        std::vector<std::vector<Element>> out(m);
        for (const Element v : set) out[v % m].push_back(v);
        return out;
    };
    const auto ba = buckets(as);
    const auto bb = buckets(bs);
    const auto bc = buckets(cs);
    const auto heavy = [&](const std::vector<std::vector<Element>>& b, Element v) {
        return b[v % m].size() > t;
    };

    for (const Element a : as) {
        if (!heavy(ba, a)) continue;
        ++result.heavy_elements;
        for (const Element b : bs) result.decision = result.decision || inst.c.contains(a + b);
    }
    for (const Element b : bs) {
        if (!heavy(bb, b)) continue;
        ++result.heavy_elements;
        for (const Element a : as) result.decision = result.decision || inst.c.contains(a + b);
    }
    for (const Element c : cs) {
        if (!heavy(bc, c)) continue;
        ++result.heavy_elements;
        for (const Element a : as) result.decision = result.decision || (a < c && inst.b.contains(c - a));
    }
    if (result.decision) return result;

    const Element u = inst.universe();
    const Element dummy = 4 * ((u + m - 1) / m + 1);
    result.entry_limit = u / m + 2;

    const auto build_xy = [&](const std::vector<std::vector<Element>>& b, std::size_t x,
                              std::vector<Element>& out) {
        out.assign(m, dummy);
        bool any = false;
        for (std::size_t i = 0; i < m; ++i) {
            if (b[i].size() >= x + 1 && b[i].size() <= t) {
                out[i] = (b[i][x] - i) / m + 1;
                any = true;
            }
        }
        return any;
    };

    std::vector<std::vector<Element>> xs(t), ys(t), zs(t);
    std::vector<std::uint8_t> x_any(t), y_any(t), z_any(t, 0);
    for (std::size_t x = 0; x < t; ++x) {
        x_any[x] = build_xy(ba, x, xs[x]);
        y_any[x] = build_xy(bb, x, ys[x]);
        zs[x].assign(2 * m - 1, 3 * dummy);
        for (std::size_t k = 0; k + 1 < 2 * m; ++k) {
            const auto& b = bc[k % m];
            if (b.size() >= x + 1 && b.size() <= t && b[x] >= k) {
                zs[x][k] = (b[x] - k) / m + 2;
                z_any[x] = 1;
            }
        }
    }
    for (std::size_t x = 0; x < t; ++x) {
        for (const auto* vec : {&xs[x], &ys[x]}) {
            for (const Element e : *vec) {
                if (e != dummy) result.max_entry = std::max(result.max_entry, e);
            }
        }
        for (const Element e : zs[x]) {
            if (e != 3 * dummy) result.max_entry = std::max(result.max_entry, e);
        }
    }
    result.entries_ok = result.max_entry <= result.entry_limit;

    struct Cell {
        std::size_t x, y, z;
    };
    std::vector<Cell> cells;
    for (std::size_t x = 0; x < t; ++x) {
        for (std::size_t y = 0; y < t; ++y) {
            for (std::size_t z = 0; z < t; ++z) {
                if (x_any[x] && y_any[y] && z_any[z]) cells.push_back({x, y, z});
            }
        }
    }
    result.grid_cells = t * t * t;
    result.solver_calls = cells.size();
    std::vector<std::uint8_t> hit(cells.size(), 0);
    parallel_for(cells.size(), [&](std::size_t c) {
        const auto mono = tri_conv_to_mono(xs[cells[c].x], ys[cells[c].y], zs[cells[c].z]);
        const auto flags = solver(mono);
        if (flags.size() != mono.size()) throw InvariantViolation("conv solver returned wrong length");
        for (std::size_t p = 3 * m + 1; p < 5 * m; ++p) {
            if (flags[p]) hit[c] = 1;
        }
    });
    result.decision = std::any_of(hit.begin(), hit.end(), [](std::uint8_t h) { return h != 0; });
    return result;
}

ConvResult reduce_conv3sum_quadratic(const ThreeSumInstance& inst, const ConvSolver& solver,
                                     const ConvParams& params) {
    const std::uint64_t n = std::max<std::uint64_t>(2, inst.size());
    const bool cubic_universe = n >= 2'000'000 || inst.universe() <= n * n * n;
    if (cubic_universe) {
        return conv_stage(TriThreeSumInstance(inst.elements(), inst.elements(), inst.elements(),
                                              inst.universe()),
                          solver, params.heavy_exponent);
    }
    ConvResult total;
    total.composed = true;
    std::mutex lock;
    const TriDecisionSolver stage = [&](const TriThreeSumInstance& piece) {
        const auto r = conv_stage(piece, solver, params.heavy_exponent);
        std::lock_guard guard(lock);
        total.stages += r.stages;
        total.heavy_elements += r.heavy_elements;
        total.grid_cells += r.grid_cells;
        total.solver_calls += r.solver_calls;
        total.entries_ok = total.entries_ok && r.entries_ok;
        total.modulus = std::max(total.modulus, r.modulus);
        if (r.max_entry > total.max_entry) {
            total.max_entry = r.max_entry;
            total.entry_limit = r.entry_limit;
        }
        return r.decision;
    };
    total.decision = reduce_3sum_cubic(inst, stage, params.cubic).decision;
    return total;
}

// ---------------------------------------------------------------------------

std::vector<Element> listing_dummies(std::uint64_t m, std::size_t k) {
    const Element l = 2 * m + 1;
    const Element base = std::max<Element>(10 * m, l * (k + 1));
    std::vector<Element> out;
    out.reserve(k);
    for (std::size_t i = 1; i <= k; ++i) out.push_back(base + l * i);
    return out;
}

ListingResult reduce_listing_small_universe(const ThreeSumInstance& inst, const Lister& lister,
                                            const ListingParams& params) {
    if (!(params.mu > 1 && params.mu < 2)) throw ParameterError("listing needs 1 < mu < 2");
    if (!(params.delta > 0 && params.delta <= params.mu - 1)) {
        throw ParameterError("listing needs 0 < delta <= mu - 1");
    }
    ListingResult result;
    const std::size_t n = inst.size();
    if (n == 0) return result;
    const std::uint64_t scale = std::max<std::uint64_t>(2, n);
    result.hashing = select_modulus_few_false_positives({inst}, {params.mu, params.delta, scale});
    const std::uint64_t m = result.hashing.modulus;
    result.cap = params.cap ? *params.cap : 3 * result.hashing.final_score;

    std::vector<std::vector<Element>> by_residue(m + 1);
    std::vector<Element> values;
    for (const Element a : inst.elements()) {
        const Element r = (a - 1) % m + 1;
        by_residue[r].push_back(a);
        values.push_back(r);
        values.push_back(r + m);
    }
    const auto dummies = listing_dummies(m, ceil_power(scale, 1.0 + params.delta));
    result.dummies = dummies.size();
    values.insert(values.end(), dummies.begin(), dummies.end());
    const auto reduced = ThreeSumInstance::from_values(std::move(values), dummies.back());

    const auto listed = lister(reduced);
    result.listed = listed.size();
    if (listed.size() > result.cap) {
        throw InvariantViolation("lister returned " + std::to_string(listed.size()) +
                                 " solutions, above the cap " + std::to_string(result.cap));
    }
    for (const auto& s : listed) {
        if (s.a + s.b != s.c || !reduced.contains(s.a) || !reduced.contains(s.b) || !reduced.contains(s.c)) {
            throw InvariantViolation("lister returned a triple that is not a solution");
        }
        if (s.c > 2 * m) throw InvariantViolation("lister solution involves a dummy element");
        const auto& as = by_residue[(s.a - 1) % m + 1];
        const auto& bs = by_residue[(s.b - 1) % m + 1];
        for (const Element a : as) {
            for (const Element b : bs) {
                ++result.checked_pairs;
                if (!inst.contains(a + b)) continue;
                const auto cand = SolutionTriple::genuine(a, b, a + b);
                if (!result.witness || cand < *result.witness) result.witness = cand;
            }
        }
    }
    result.decision = result.witness.has_value();
    return result;
}

}  // namespace detsum
