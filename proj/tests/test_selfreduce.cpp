#include <doctest.h>

#include <set>

#include "detsum/oracle.hpp"
#include "detsum/selfreduce.hpp"

using namespace detsum;

namespace {

std::size_t group_of(const PartitionPlan& plan, Element v) {
    for (std::size_t g = 0; g < plan.groups.size(); ++g) {
        if (plan.groups[g].min <= v && v <= plan.groups[g].max) return g;
    }
    FAIL("value outside every group");
    return 0;
}

void check_plan(const std::vector<Element>& values, Element u, std::size_t g, const DominanceReduction& red) {
    const auto& plan = red.plan;
    CHECK(plan.size_cap == (2 * values.size() + g - 1) / g);
    CHECK(plan.span_cap == (2 * u + g - 1) / g);
    CHECK(plan.groups.size() <= g);
    std::size_t next = 0;
    for (std::size_t i = 0; i < plan.groups.size(); ++i) {
        const auto& gr = plan.groups[i];
        CHECK(gr.lo == next);
        CHECK(gr.size() >= 1);
        CHECK(gr.size() <= plan.size_cap);
        CHECK(gr.max - gr.min <= plan.span_cap);
        CHECK(gr.min == values[gr.lo]);
        CHECK(gr.max == values[gr.hi - 1]);
        if (i > 0) CHECK(plan.groups[i - 1].max < gr.min);
        next = gr.hi;
    }
    CHECK(next == values.size());
    const std::size_t k = plan.groups.size();
    CHECK(red.r.triples.size() <= (2 * g + 1) * (2 * g + 1));
    std::set<GroupTriple> listed(red.r.triples.begin(), red.r.triples.end());
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t j = 0; j < k; ++j)
            for (std::uint32_t l = 0; l < k; ++l) {
                const auto& a = plan.groups[i];
                const auto& b = plan.groups[j];
                const auto& c = plan.groups[l];
                const bool nontrivial = a.min + b.min <= c.max && a.max + b.max >= c.min;
                CHECK(is_nontrivial(plan, i, j, l) == nontrivial);
                CHECK(listed.count({i, j, l}) == (nontrivial ? 1u : 0u));
            }
}

}  // namespace

TEST_CASE("dominance partition example") {
    const std::vector<Element> v{1, 2, 3, 9, 10, 11};
    const auto red = dominance_partition(std::span<const Element>(v), 12, 3);
    CHECK(red.plan.size_cap == 4);
    CHECK(red.plan.span_cap == 8);
    REQUIRE(red.plan.groups.size() == 2);
    CHECK(red.plan.groups[0].size() == 4);
    CHECK(red.plan.groups[1].min == 10);
    const std::vector<GroupTriple> want{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 1}};
    CHECK(red.r.triples == want);
    check_plan(v, 12, 3, red);
    CHECK(serialize(red.plan, red.r) == "PLAN 3\n0 4 4 6\nR\n1 1 1\n1 1 2\n1 2 2\n2 1 2\n");
}

TEST_CASE("g = 1 is a single group") {
    const auto inst = generate(20, 1000, 4, 2);
    const auto red = dominance_partition(inst, 1);
    CHECK(red.plan.groups.size() == 1);
    CHECK(red.r.triples == std::vector<GroupTriple>{{0, 0, 0}});
    const auto subs = materialize_3sum(std::span<const Element>(inst.elements()), red);
    REQUIRE(subs.size() == 1);
    std::vector<SolutionTriple> lifted;
    for (const auto& s : list_solutions(subs[0].tri)) lifted.push_back(subs[0].lift(s));
    std::sort(lifted.begin(), lifted.end());
    CHECK(lifted == list_solutions(inst));
}

TEST_CASE("partition invariants and completeness on random instances") {
    SeededRng rng(21);
    for (int round = 0; round < 60; ++round) {
        const std::size_t n = 1 + rng.uniform(0, 64);
        const Element u = 3 * n + rng.uniform(0, 400);
        const auto inst = generate(n, u, rng.next(), rng.uniform(0, n / 3));
        const std::size_t g = 1 + rng.uniform(0, n - 1);
        const auto red = dominance_partition(inst, g);
        check_plan(inst.elements(), u, g, red);
        std::set<GroupTriple> listed(red.r.triples.begin(), red.r.triples.end());
        for (const auto& s : list_solutions(inst)) {
            const GroupTriple t{static_cast<std::uint32_t>(group_of(red.plan, s.a)),
                                static_cast<std::uint32_t>(group_of(red.plan, s.b)),
                                static_cast<std::uint32_t>(group_of(red.plan, s.c))};
            CHECK(listed.count(t) == 1);
        }
        const auto subs = materialize_3sum(std::span<const Element>(inst.elements()), red);
        CHECK(subs.size() == red.r.triples.size());
        std::set<SolutionTriple> lifted;
        for (const auto& sub : subs)
            for (const auto& s : list_solutions(sub.tri)) lifted.insert(sub.lift(s));
        const auto want = list_solutions(inst);
        CHECK(std::vector<SolutionTriple>(lifted.begin(), lifted.end()) == want);
    }
    CHECK_THROWS(dominance_partition(ThreeSumInstance({1, 2}, 3), 3));
}

TEST_CASE("repeated values stay together") {
    const std::vector<Element> v{1, 1, 1, 1, 2, 7, 7, 8};
    const auto red = dominance_partition(std::span<const Element>(v), 8, 4);
    for (std::size_t i = 1; i < red.plan.groups.size(); ++i) {
        CHECK(red.plan.groups[i - 1].max < red.plan.groups[i].min);
    }
}

TEST_CASE("an recombination") {
    const ThreeSumInstance inst({2, 4, 6, 8}, 8);
    const auto red = dominance_partition(inst, 2);
    const std::span<const Element> v(inst.elements());
    const auto subs = materialize_an3sum(v, red);
    std::vector<std::vector<bool>> answers;
    for (const auto& s : subs) answers.push_back(solve_an3sum(s.tri));
    CHECK(recombine_an(v, red, subs, answers) == solve_an3sum(inst));

    SeededRng rng(8);
    for (int round = 0; round < 40; ++round) {
        const std::size_t n = 3 + rng.uniform(0, 50);
        const auto x = generate(n, 3 * n + rng.uniform(0, 300), rng.next(), rng.uniform(0, n / 3));
        const auto r = dominance_partition(x, 1 + rng.uniform(0, n - 1));
        const std::span<const Element> xs(x.elements());
        const auto ss = materialize_an3sum(xs, r);
        std::vector<std::vector<bool>> ans;
        for (const auto& s : ss) ans.push_back(solve_an3sum(s.tri));
        const auto got = recombine_an(xs, r, ss, ans);
        CHECK(got == solve_an3sum(x));
    }
}

TEST_CASE("trivial chop") {
    const ThreeSumInstance whole({1, 2, 3, 101, 103}, 200);
    const auto same = trivial_chop(whole, 200);
    REQUIRE(same.size() == 1);
    CHECK(same[0].declared_target == 400);

    const auto pieces = trivial_chop(whole, 100);
    CHECK(pieces.size() == 8);
    std::set<SolutionTriple> lifted;
    for (const auto& p : pieces) {
        CHECK(p.tri.universe() <= p.declared_target);
        for (const auto& s : list_solutions(p.tri)) lifted.insert(p.lift(s));
    }
    CHECK(std::vector<SolutionTriple>(lifted.begin(), lifted.end()) == list_solutions(whole));

    for (const auto& p : trivial_chop(ThreeSumInstance({}, 50), 10)) {
        CHECK(p.tri.a.empty());
        CHECK(p.tri.c.empty());
    }
}
