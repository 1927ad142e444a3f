// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance [path-to-threesum]
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "detsum/appendix.hpp"
#include "detsum/hashing.hpp"
#include "detsum/load_balance.hpp"
#include "detsum/modcount.hpp"
#include "detsum/oracle.hpp"
#include "detsum/parallel.hpp"
#include "detsum/selfreduce.hpp"
#include "detsum/setreduce.hpp"
#include "detsum/unireduce.hpp"

using namespace detsum;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Collects failure messages; keeps the first few for the report line.
class Tally {
public:
    void check(bool ok, const std::string& what) {
        std::lock_guard lock(mutex_);
        ++checks_;
        if (ok) return;
        ++failures_;
        if (notes_.size() < 5) notes_.push_back(what);
    }
    bool ok() const { return failures_ == 0; }
    std::uint64_t checks() const { return checks_; }
    std::string notes() const {
        std::string out;
        for (const auto& n : notes_) out += "\n    " + n;
        return out;
    }

private:
    std::mutex mutex_;
    std::uint64_t checks_ = 0;
    std::uint64_t failures_ = 0;
    std::vector<std::string> notes_;
};

int failed_criteria = 0;

void report(int id, const Tally& t, double secs, const std::string& detail) {
    std::printf("criterion %d: %s (%llu checks, %.2fs; %s)%s\n", id, t.ok() ? "PASS" : "FAIL",
                static_cast<unsigned long long>(t.checks()), secs, detail.c_str(), t.notes().c_str());
    std::fflush(stdout);
    if (!t.ok()) ++failed_criteria;
}

ThreeSumInstance random_no_instance(SeededRng& rng, std::size_t n, Element u) {
    while (true) {
        auto inst = generate(n, u, rng.next(), 0);
        if (!solve_3sum(inst)) return inst;
    }
}

/// Mixed planted / unplanted instance; the universe is log-uniform.
ThreeSumInstance random_instance(SeededRng& rng, std::size_t n_max, unsigned log_u_max) {
    const std::size_t n = 1 + rng.uniform(0, n_max - 1);
    const unsigned bits = static_cast<unsigned>(rng.uniform(0, log_u_max));
    Element u = std::max<Element>(3 * n, Element{1} << bits);
    u += rng.uniform(0, u / 2);
    u = std::min<Element>(u, Element{1} << log_u_max);
    u = std::max<Element>(u, 3 * n);
    const std::size_t planted = rng.uniform(0, 1) ? rng.uniform(1, std::max<std::size_t>(1, n / 3)) : 0;
    return generate(n, u, rng.next(), std::min(planted, n / 3));
}

/// S(m) by pairs: for every (a, b) the number of c in the residue class of
/// a + b, read from a plain residue table.
std::uint64_t pseudo_by_pairs(const std::vector<Element>& values, std::uint64_t m) {
    std::vector<std::uint64_t> count(m, 0);
    for (const Element c : values) ++count[c % m];
    std::uint64_t total = 0;
    for (const Element a : values)
        for (const Element b : values) total += count[(a % m + b % m) % m];
    return total;
}

// ---------------------------------------------------------------------------

void criterion_1() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(1001);
    struct Case {
        std::vector<Element> values;
        std::uint64_t m;
    };
    std::vector<Case> cases;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t n = rng.uniform(0, 300);
        const Element u = 3 * std::max<std::size_t>(n, 1) + rng.uniform(0, Element{1} << rng.uniform(4, 40));
        std::vector<Element> values;
        if (n > 0) values = generate(n, u, rng.next(), rng.uniform(0, n / 3)).elements();
        cases.push_back({std::move(values), rng.uniform(1, 2000)});
    }
    parallel_for(cases.size(), [&](std::size_t i) {
        const auto& c = cases[i];
        const std::span<const Element> v(c.values);
        const auto fast = count_solutions_mod(v, c.m);
        const auto brute = count_pseudo_bruteforce(v, c.m);
        t.check(fast == brute, "case " + std::to_string(i) + ": " + std::to_string(fast) +
                                   " != " + std::to_string(brute));
    });
    const double secs = seconds_since(start);
    t.check(secs < 60.0, "took " + std::to_string(secs) + "s");
    report(1, t, secs, "1000 pairs, n <= 300, m <= 2000, limit 60s");
}

void criterion_2() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(2002);
    std::size_t rounds = 0, selections = 0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t n = rng.uniform(32, 256);
        const auto inst = random_no_instance(rng, n, rng.uniform(Element{1} << 20, Element{1} << 40));
        for (const double delta : {0.25, 0.5}) {
            for (const double mu : {1.0, 1.5, 2.0 - 2.0 * delta}) {
                const auto sel = select_modulus_few_false_positives({inst}, {mu, delta, n});
                ++selections;
                const std::string tag = "instance " + std::to_string(i) + " mu " + std::to_string(mu) +
                                        " delta " + std::to_string(delta);
                for (const auto& r : sel.trace) {
                    ++rounds;
                    std::uint64_t sum = 0, chosen = 0;
                    bool chosen_seen = false;
                    for (const auto& c : r.candidates) {
                        const auto s = pseudo_by_pairs(inst.elements(), r.modulus_before * c.prime);
                        t.check(s == c.score, tag + ": candidate score differs");
                        sum += s;
                        if (c.prime == r.chosen) {
                            chosen = s;
                            chosen_seen = true;
                        }
                    }
                    t.check(chosen_seen, tag + ": chosen prime not in the pool");
                    t.check(chosen * r.candidates.size() <= sum, tag + ": round above the mean");
                }
                const double goal = std::pow(static_cast<double>(n), mu);
                t.check(static_cast<double>(sel.modulus) >= goal && static_cast<double>(sel.modulus) < 2 * goal,
                        tag + ": modulus " + std::to_string(sel.modulus) + " outside [n^mu, 2n^mu)");
                t.check(sel.final_score == pseudo_by_pairs(inst.elements(), sel.modulus), tag + ": final score");
                t.check(sel.verdict == HashVerdict::modulus, tag + ": no-instance flagged");
            }
        }
    }
    report(2, t, seconds_since(start),
           std::to_string(selections) + " selections, " + std::to_string(rounds) + " rounds");
}

void criterion_3() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(3003);
    const std::array<std::size_t, 4> gs{2, 4, 8, 16};
    std::size_t solutions = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t g = gs[static_cast<std::size_t>(i) % 4];
        const std::size_t n = rng.uniform(g, 200);
        const Element u = 3 * n + rng.uniform(0, rng.uniform(0, 1) ? 20 * n : Element{1} << 30);
        const auto inst = generate(n, u, rng.next(), rng.uniform(0, n / 3));
        const auto red = dominance_partition(inst, g);
        const auto& plan = red.plan;
        const std::string tag = "instance " + std::to_string(i);
        t.check(red.r.triples.size() <= (2 * g + 1) * (2 * g + 1), tag + ": |R| too large");
        t.check(plan.groups.size() <= g, tag + ": too many groups");
        for (const auto& gr : plan.groups) {
            t.check(gr.size() <= (2 * n + g - 1) / g, tag + ": size cap");
            t.check(gr.max - gr.min <= (2 * u + g - 1) / g, tag + ": span cap");
        }
        const auto group_of = [&](Element v) {
            for (std::uint32_t k = 0; k < plan.groups.size(); ++k)
                if (plan.groups[k].min <= v && v <= plan.groups[k].max) return k;
            return std::uint32_t{0xffffffff};
        };
        std::set<GroupTriple> listed(red.r.triples.begin(), red.r.triples.end());
        const auto want = list_solutions(inst);
        solutions += want.size();
        for (const auto& s : want) {
            t.check(listed.count({group_of(s.a), group_of(s.b), group_of(s.c)}) == 1,
                    tag + ": solution triple missing from R");
        }
        std::set<SolutionTriple> lifted;
        for (const auto& sub : materialize_3sum(std::span<const Element>(inst.elements()), red))
            for (const auto& s : list_solutions(sub.tri)) lifted.insert(sub.lift(s));
        t.check(std::vector<SolutionTriple>(lifted.begin(), lifted.end()) == want, tag + ": lifted union differs");
    }
    report(3, t, seconds_since(start), "200 instances, " + std::to_string(solutions) + " genuine solutions");
}

void criterion_4() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(4004);
    const TriDecisionSolver decide = [](const TriThreeSumInstance& x) { return solve_3sum(x).has_value(); };
    const TriAnSolver an = [](const TriThreeSumInstance& x) { return solve_an3sum(x); };
    const Lister lister = [](const ThreeSumInstance& x) { return list_solutions(x); };
    std::array<std::size_t, 4> yes{};
    for (int i = 0; i < 200; ++i) {
        const std::string tag = "instance " + std::to_string(i);
        const auto a = random_instance(rng, 128, 40);
        const bool truth = solve_3sum(a).has_value();
        yes[0] += truth;
        const auto cubic = reduce_3sum_cubic(a, decide, {});
        t.check(cubic.decision == truth, tag + ": cubic");
        t.check(cubic.caps_ok, tag + ": cubic chop cap");

        const auto b = random_instance(rng, 128, 40);
        const auto flags = solve_an3sum(b);
        yes[1] += std::count(flags.begin(), flags.end(), true) > 0;
        const auto quad = reduce_an3sum_quadratic(b, an, {});
        t.check(quad.answers == flags, tag + ": an-quadratic");
        t.check(quad.caps_ok, tag + ": an chop cap");

        const auto c = random_instance(rng, 128, 40);
        const bool c_truth = solve_3sum(c).has_value();
        yes[2] += c_truth;
        const auto conv = reduce_conv3sum_quadratic(c, solve_conv3sum, {});
        t.check(conv.decision == c_truth, tag + ": conv-quadratic");
        t.check(conv.entries_ok, tag + ": conv entry bound");

        const auto d = random_instance(rng, 128, 40);
        const bool d_truth = solve_3sum(d).has_value();
        yes[3] += d_truth;
        if (d.size() >= 2) {
            const auto list = reduce_listing_small_universe(d, lister, {});
            t.check(list.decision == d_truth, tag + ": listing");
        }
    }
    const double secs = seconds_since(start);
    t.check(secs < 300.0, "took " + std::to_string(secs) + "s");
    report(4, t, secs,
           "200 each; yes-instances cubic " + std::to_string(yes[0]) + ", an " + std::to_string(yes[1]) +
               ", conv " + std::to_string(yes[2]) + ", listing " + std::to_string(yes[3]) + "; limit 300s");
}

void check_family(Tally& t, const std::string& tag, const SetReduction& red) {
    const auto& ctx = red.ctx;
    const auto& groups = ctx.reduction.plan.groups;
    const std::uint64_t r = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(ctx.modulus))));
    std::size_t q = 0, s = 0;
    for (const auto& tr : ctx.reduction.r.triples) q += groups[tr.i].size();
    for (const auto& g : groups) s = std::max(s, g.size());
    t.check(ctx.radix == r, tag + ": radix");
    t.check(red.shape.universe == ctx.modulus && red.family.universe == ctx.modulus, tag + ": U");
    t.check(red.shape.n_sets == 2 * groups.size() * (r + 1) && red.family.set_count() == red.shape.n_sets,
            tag + ": N");
    t.check(red.shape.s == s && red.family.size_bound == s, tag + ": s");
    t.check(red.shape.q == q && red.family.query_count() == q, tag + ": q");
}

void criterion_5() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(5005);
    std::size_t disj = 0, inter = 0, exhaustive = 0;
    for (int i = 0; i < 100; ++i) {
        const double alpha = i % 2 ? 0.25 : 0.5;
        const auto inst = random_instance(rng, 64, 40);
        const bool truth = solve_3sum(inst).has_value();
        const std::string tag = "instance " + std::to_string(i) + " alpha " + std::to_string(alpha);
        const auto r = solve_3sum_via_setdisjointness(inst, alpha, 0.25, oracle_disjointness());
        t.check(r.decision == truth, tag + ": setdisj decision");
        ++disj;
        const double d = std::min((1.0 - alpha) / 2.0, 0.25 / 4.0);
        const auto red = build_setdisjointness(inst, alpha, d);
        if (!red.early_yes && !inst.empty()) check_family(t, tag + " setdisj", red);
    }
    for (int i = 0; i < 100; ++i) {
        const double alpha = i % 2 ? 0.25 : 0.5;
        const std::array<double, 3> betas{0.0, 0.25, 1.0 - alpha};
        const double beta = betas[static_cast<std::size_t>(i / 2) % 3];
        const auto inst = random_instance(rng, 64, 40);
        const bool truth = solve_3sum(inst).has_value();
        const std::string tag = "instance " + std::to_string(i) + " alpha " + std::to_string(alpha) + " beta " +
                                std::to_string(beta);
        const auto r = solve_3sum_via_setintersection(inst, alpha, beta, oracle_intersection());
        t.check(r.decision == truth, tag + ": setint decision");
        ++inter;
        const auto red = build_setintersection(inst, alpha, beta, std::min((1.0 - alpha) / 2.0, 1.0 / 14.0));
        if (red.early_yes || inst.empty()) continue;
        check_family(t, tag + " setint", red);

        // Exhaustive correspondence: every pseudo-solution over R is rebuilt.
        const auto& e = inst.elements();
        const auto& groups = red.ctx.reduction.plan.groups;
        const std::uint64_t m = red.ctx.modulus;
        std::uint64_t pseudo = 0;
        std::set<SolutionTriple> genuine_over_r;
        for (const auto& tr : red.ctx.reduction.r.triples)
            for (std::size_t a = groups[tr.i].lo; a < groups[tr.i].hi; ++a)
                for (std::size_t b = groups[tr.j].lo; b < groups[tr.j].hi; ++b)
                    for (std::size_t c = groups[tr.k].lo; c < groups[tr.k].hi; ++c) {
                        if ((e[a] + e[b]) % m != e[c] % m) continue;
                        ++pseudo;
                        if (e[a] + e[b] == e[c]) genuine_over_r.insert(SolutionTriple::genuine(e[a], e[b], e[c]));
                    }
        const auto answers = solve_set_queries(red.family);
        const auto rec = recover_and_decide(red.ctx, answers);
        t.check(rec.recovered == pseudo, tag + ": recovered " + std::to_string(rec.recovered) + " of " +
                                             std::to_string(pseudo) + " pseudo-solutions");
        const auto all = list_solutions(inst);
        t.check(genuine_over_r.size() == all.size(), tag + ": genuine solution outside R");
        t.check(rec.decision == truth, tag + ": recovered decision");
        if (truth) t.check(rec.witness && *rec.witness == all.front(), tag + ": witness is not the smallest");
        t.check(rec.listed <= red.hashing.final_score, tag + ": listed above S(m)");
        ++exhaustive;
    }
    report(5, t, seconds_since(start),
           std::to_string(disj) + " setdisj, " + std::to_string(inter) + " setint, " + std::to_string(exhaustive) +
               " exhaustive correspondences");
}

std::uint64_t stage_objective(const std::vector<std::vector<Element>>& sets, const std::vector<std::uint64_t>& shifts,
                              std::size_t i, std::uint64_t s) {
    std::uint64_t total = 0;
    for (std::size_t j = 0; j < i; ++j)
        for (const Element a : sets[i])
            for (const Element b : sets[j]) total += (a + s == b + shifts[j]) + (a + 2 * s == b + 2 * shifts[j]);
    return total;
}

void check_tables(Tally& t, const std::string& tag, const std::vector<std::vector<Element>>& sets,
                  const std::vector<std::uint64_t>& shifts, const std::vector<LoadStage>& trace, Element u) {
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::uint64_t sum = 0, best = ~std::uint64_t{0};
        for (std::uint64_t s = 0; s < u; ++s) {
            const auto v = stage_objective(sets, shifts, i, s);
            sum += v;
            best = std::min(best, v);
        }
        const auto chosen = stage_objective(sets, shifts, i, shifts[i]);
        t.check(chosen * u <= sum, tag + ": stage " + std::to_string(i + 1) + " above the mean");
        t.check(chosen == best && trace[i].objective == chosen && trace[i].objective_sum == sum,
                tag + ": stage " + std::to_string(i + 1) + " table mismatch");
    }
}

void check_load(Tally& t, const std::string& tag, const std::vector<std::vector<Element>>& sets,
                const LoadBalanceResult& r) {
    const Element u = r.universe;
    std::vector<std::uint64_t> one(3 * u + 1, 0), two(3 * u + 1, 0);
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<Element> merged(r.light[i]);
        merged.insert(merged.end(), r.heavy[i].begin(), r.heavy[i].end());
        std::sort(merged.begin(), merged.end());
        t.check(merged == sets[i], tag + ": light/heavy split is not a partition");
        for (const Element a : r.light[i]) {
            ++one[a + r.shifts[i]];
            ++two[a + 2 * r.shifts[i]];
        }
    }
    const auto worst = std::max(*std::max_element(one.begin(), one.end()), *std::max_element(two.begin(), two.end()));
    t.check(worst <= r.load_bound, tag + ": load " + std::to_string(worst) + " > L " + std::to_string(r.load_bound));
}

void criterion_6() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(6006);
    double heavy = 0, soft = 0;
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = rng.uniform(1, 16);
        const Element u = rng.uniform(1, 512);
        const double delta = std::array<double, 3>{0.2, 0.25, 0.5}[static_cast<std::size_t>(i) % 3];
        std::vector<std::vector<Element>> sets(n);
        std::size_t s_max = 0;
        for (auto& s : sets) {
            const std::size_t k = rng.uniform(0, std::min<Element>(u, 40));
            for (std::size_t j = 0; j < k; ++j) s.push_back(rng.uniform(1, u));
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
            s_max = std::max(s_max, s.size());
        }
        const std::string tag = "case " + std::to_string(i);
        const auto slow = load_balance_slow(sets, u, delta);
        check_tables(t, tag + " slow", sets, slow.shifts, slow.trace, u);
        check_load(t, tag + " slow", sets, slow);

        const auto fast = load_balance(sets, u, delta);
        std::vector<std::vector<Element>> buckets;
        std::vector<std::uint64_t> bucket_shifts;
        for (std::size_t b = 0; b < n; b += fast.bucket_size) {
            std::vector<Element> un;
            for (std::size_t j = b; j < std::min(n, b + fast.bucket_size); ++j) un.insert(un.end(), sets[j].begin(), sets[j].end());
            std::sort(un.begin(), un.end());
            un.erase(std::unique(un.begin(), un.end()), un.end());
            buckets.push_back(std::move(un));
            bucket_shifts.push_back(fast.shifts[b]);
        }
        check_tables(t, tag + " bucketed", buckets, bucket_shifts, fast.trace, u);
        check_load(t, tag + " bucketed", sets, fast);
        heavy += static_cast<double>(fast.heavy_total());
        soft += heavy_soft_bound(n, s_max, u, delta);
    }
    std::ostringstream detail;
    detail << "60 cases N <= 16, U <= 512; sum |A''| = " << heavy << " vs N^(2-delta) S^2 / U = " << soft
           << " (report only)";
    report(6, t, seconds_since(start), detail.str());
}

void criterion_7() {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(7007);
    std::uint64_t pairs = 0, expanded = 0;
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_instance(rng, 64, 40);
        const std::string tag = "instance " + std::to_string(i);
        const auto r = reduce_3sum_to_monoconv(inst, solve_monoconv, {});
        t.check(r.answers == solve_an3sum(inst), tag + ": monoconv answers");
        t.check(r.stats.loads_ok, tag + ": monoconv loads");
        t.check(r.stats.brute_pairs <= r.hashing.final_score,
                tag + ": brute pairs " + std::to_string(r.stats.brute_pairs) + " > S " +
                    std::to_string(r.hashing.final_score));
        pairs += r.stats.brute_pairs;
    }
    for (int i = 0; i < 100; ++i) {
        const auto inst = random_instance(rng, 64, 40);
        const std::string tag = "instance " + std::to_string(i);
        const auto r = solve_3sum_via_witness_ds(inst, naive_witness_factory(), {});
        t.check(r.decision == solve_3sum(inst).has_value(), tag + ": witness decision");
        if (!r.early_yes) {
            t.check(r.expanded <= r.pseudo_bound, tag + ": expanded " + std::to_string(r.expanded) + " > S " +
                                                      std::to_string(r.pseudo_bound));
        }
        expanded += r.expanded;
    }
    report(7, t, seconds_since(start),
           "100 monoconv, 100 witness; brute pairs " + std::to_string(pairs) + ", expanded " + std::to_string(expanded));
}

// ---------------------------------------------------------------------------

std::string join(const std::vector<bool>& v) {
    std::string s;
    for (const bool b : v) s += b ? '1' : '0';
    return s;
}

std::string triple(const std::optional<SolutionTriple>& w) {
    if (!w) return "-";
    return std::to_string(w->a) + "+" + std::to_string(w->b) + "=" + std::to_string(w->c);
}

/// Every library entry point on one instance, rendered to text.
std::string library_digest(const ThreeSumInstance& inst) {
    std::ostringstream out;
    const TriDecisionSolver decide = [](const TriThreeSumInstance& x) { return solve_3sum(x).has_value(); };
    const TriAnSolver an = [](const TriThreeSumInstance& x) { return solve_an3sum(x); };
    out << serialize(inst);
    const auto sel = select_modulus_few_false_positives({inst}, {1.5, 0.5, std::max<std::size_t>(2, inst.size())});
    out << sel.modulus << " " << sel.final_score << "\n" << sel.trace_text();
    const auto col = select_modulus_few_collisions(inst, {1.0, 0.5, std::max<std::size_t>(2, inst.size())});
    out << col.modulus << " " << col.final_score << "\n";
    const auto red = dominance_partition(inst, std::max<std::size_t>(1, inst.size() / 4));
    out << serialize(red.plan, red.r);
    const auto cubic = reduce_3sum_cubic(inst, decide, {});
    out << cubic.decision << triple(cubic.witness) << cubic.enumerated << cubic.chop_pieces << "\n";
    const auto quad = reduce_an3sum_quadratic(inst, an, {});
    out << join(quad.answers) << quad.enumerated << "\n";
    const auto conv = reduce_conv3sum_quadratic(inst, solve_conv3sum, {});
    out << conv.decision << conv.grid_cells << conv.max_entry << "\n";
    if (inst.size() >= 2) {
        const auto list = reduce_listing_small_universe(
            inst, [](const ThreeSumInstance& x) { return list_solutions(x); }, {});
        out << list.decision << triple(list.witness) << list.listed << "\n";
    }
    const auto sd = solve_3sum_via_setdisjointness(inst, 0.5, 0.25, oracle_disjointness());
    out << sd.decision << triple(sd.witness) << sd.listed << sd.saturated << "\n";
    const auto fam = build_setintersection(inst, 0.5, 0.25, 1.0 / 14.0);
    out << serialize(fam.family);
    const auto si = solve_3sum_via_setintersection(inst, 0.5, 0.25, oracle_intersection());
    out << si.decision << triple(si.witness) << si.recovered << "\n";
    const auto mc = reduce_3sum_to_monoconv(inst, solve_monoconv, {});
    out << join(mc.answers) << mc.stats.grid_cells << mc.stats.reports << mc.stats.brute_pairs << " "
        << mc.stats.heavy_soft_bound << "\n";
    const auto wd = solve_3sum_via_witness_ds(inst, naive_witness_factory(), {});
    out << wd.decision << triple(wd.witness) << wd.expanded << "\n";
    std::vector<std::vector<Element>> sets;
    for (std::size_t i = 0; i + 4 <= inst.size(); i += 4) {
        std::vector<Element> s;
        for (std::size_t j = i; j < i + 4; ++j) s.push_back(inst.elements()[j] % 256 + 1);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        sets.push_back(s);
    }
    for (const auto& lb : {load_balance(sets, 256, 0.25), load_balance_slow(sets, 256, 0.25)}) {
        for (const auto s : lb.shifts) out << s << ",";
        out << lb.heavy_total() << "\n";
    }
    return out.str();
}

std::string run_capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    status = ::pclose(pipe);
    return out;
}

std::string drop_timing(const std::string& report) {
    std::istringstream in(report);
    std::string line, out;
    while (std::getline(in, line)) {
        if (line.rfind("wall_ms=", 0) == 0) continue;
        out += line + "\n";
    }
    return out;
}

void criterion_8(const char* tool) {
    const auto start = Clock::now();
    Tally t;
    SeededRng rng(8008);
    std::vector<ThreeSumInstance> instances;
    for (int i = 0; i < 6; ++i) instances.push_back(random_instance(rng, 64, 40));
    instances.push_back(generate(48, 400, 5, 10));

    std::vector<std::string> first;
    for (const char* threads : {"1", "4", "1", "7"}) {
        ::setenv("THREESUM_THREADS", threads, 1);
        std::vector<std::string> digests;
        for (const auto& inst : instances) digests.push_back(library_digest(inst));
        if (first.empty()) {
            first = digests;
        } else {
            for (std::size_t i = 0; i < digests.size(); ++i) {
                t.check(digests[i] == first[i], "library digest differs for instance " + std::to_string(i) +
                                                    " at THREESUM_THREADS=" + threads);
            }
        }
    }
    ::unsetenv("THREESUM_THREADS");

    std::string detail = "library: " + std::to_string(instances.size()) + " instances x 4 runs";
    if (tool) {
        const std::string exe = std::string("'") + tool + "'";
        const std::string file = "/tmp/detsum_accept_" + std::to_string(::getpid()) + ".3sum";
        int status = 0;
        const auto gen = exe + " gen --n 64 --universe 1000000 --seed 1 --planted 2";
        const auto g1 = run_capture(gen, status);
        t.check(status == 0, "gen failed");
        t.check(run_capture(gen, status) == g1, "gen output differs");
        run_capture(gen + " --out " + file, status);
        std::size_t commands = 2;
        for (const char* p : {"cubic", "an-quadratic", "conv-quadratic", "listing", "setdisj", "setint", "monoconv",
                              "witness"}) {
            std::string base;
            for (const char* threads : {"1", "4", "1"}) {
                const auto out = run_capture(std::string("THREESUM_THREADS=") + threads + " " + exe +
                                                 " reduce --verify --pipeline " + p + " " + file,
                                             status);
                t.check(status == 0, std::string("reduce ") + p + " exit status");
                const auto stripped = drop_timing(out);
                if (base.empty()) base = stripped;
                t.check(stripped == base, std::string("reduce ") + p + " report differs");
                ++commands;
            }
        }
        const auto bench = exe + " bench --n-min 32 --n-max 96 --n-step 32 --seed 3 --trials 3";
        const auto b1 = run_capture("THREESUM_THREADS=1 " + bench, status);
        t.check(status == 0, "bench failed");
        t.check(run_capture("THREESUM_THREADS=5 " + bench, status) == b1, "bench output differs");
        std::remove(file.c_str());
        detail += "; cli: " + std::to_string(commands + 2) + " invocations";
    } else {
        detail += "; cli skipped (no tool path given)";
    }
    report(8, t, seconds_since(start), detail);
}

}  // namespace

int main(int argc, char** argv) {
    const char* tool = argc > 1 ? argv[1] : nullptr;
    const auto start = Clock::now();
    const std::vector<std::function<void()>> criteria{criterion_1, criterion_2, criterion_3, criterion_4,
                                                      criterion_5, criterion_6, criterion_7,
                                                      [tool] { criterion_8(tool); }};
    for (const auto& c : criteria) {
        try {
            c();
        } catch (const std::exception& e) {
            std::printf("criterion: FAIL (exception: %s)\n", e.what());
            ++failed_criteria;
        }
    }
    std::printf("acceptance: %d failed, %.2fs total\n", failed_criteria, seconds_since(start));
    return failed_criteria == 0 ? 0 : 1;
}
