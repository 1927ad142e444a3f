#include <doctest.h>

#include "detsum/oracle.hpp"

using namespace detsum;

TEST_CASE("solve_3sum") {
    const auto s = solve_3sum(ThreeSumInstance({1, 2, 3}, 3));
    REQUIRE(s);
    CHECK(*s == SolutionTriple::genuine(1, 2, 3));
    CHECK_FALSE(solve_3sum(ThreeSumInstance({1, 5, 9}, 9)));
    const auto r = solve_3sum(ThreeSumInstance({1, 2, 4}, 4));
    REQUIRE(r);
    CHECK(*r == SolutionTriple::genuine(1, 1, 2));
    CHECK_FALSE(solve_3sum(ThreeSumInstance({}, 4)));
    CHECK(solve_3sum(MultisetInstance::from_values({2, 2, 4}, 4)));
    CHECK(solve_3sum(TriThreeSumInstance({1}, {2}, {3}, 3)));
    CHECK_FALSE(solve_3sum(TriThreeSumInstance({1}, {1}, {3}, 3)));
}

TEST_CASE("list_solutions is the exhaustive set") {
    const ThreeSumInstance inst({1, 2, 3, 4}, 4);
    std::vector<SolutionTriple> want;
    for (Element a : inst.elements())
        for (Element b : inst.elements())
            if (inst.contains(a + b)) want.push_back(SolutionTriple::genuine(a, b, a + b));
    std::sort(want.begin(), want.end());
    CHECK(list_solutions(inst) == want);
}

TEST_CASE("solve_an3sum") {
    CHECK(solve_an3sum(ThreeSumInstance({1, 2, 3}, 3)) == std::vector<bool>{false, true, true});
    CHECK(solve_an3sum(ThreeSumInstance({1, 5, 9}, 9)) == std::vector<bool>{false, false, false});
    CHECK(solve_an3sum(ThreeSumInstance({2, 4, 6, 8}, 8)) == std::vector<bool>{false, true, true, true});
    CHECK(solve_an3sum(TriThreeSumInstance({1}, {2}, {2, 3}, 3)) == std::vector<bool>{false, true});
}

TEST_CASE("solve_conv3sum") {
    const auto f = solve_conv3sum(ConvThreeSumInstance({1, 1, 2}, 2));
    CHECK(f == std::vector<bool>{false, false, true});
    CHECK(solve_conv3sum(ConvThreeSumInstance({5}, 5)) == std::vector<bool>{false});
    CHECK(solve_conv3sum(ConvThreeSumInstance({1, 2, 3}, 3))[2]);
}

TEST_CASE("count_pseudo_bruteforce") {
    CHECK(count_pseudo_bruteforce(ThreeSumInstance({1, 2, 3}, 3), 5) == 4);
    CHECK(count_pseudo_bruteforce(ThreeSumInstance({1, 2, 3}, 3), 2) == 13);
    CHECK(count_pseudo_bruteforce(ThreeSumInstance({}, 3), 7) == 0);
    CHECK(count_pseudo_bruteforce(MultisetInstance::from_values({1, 1}, 3), 1) == 8);
}

TEST_CASE("solve_set_queries") {
    SetQueryInstance fam;
    fam.universe = 3;
    fam.sets = {{1, 2}, {3}, {2, 3}};
    fam.size_bound = 2;
    fam.queries = {{0, 1, {}}, {0, 2, {}}};
    const auto ans = solve_set_queries(fam);
    CHECK(ans[0].disjoint);
    CHECK(ans[0].intersection.empty());
    CHECK_FALSE(ans[1].disjoint);
    CHECK(ans[1].intersection == std::vector<Element>{2});
    fam.queries.push_back({0, 7, {}});
    CHECK_THROWS_AS(solve_set_queries(fam), std::out_of_range);
}

TEST_CASE("solve_monoconv") {
    MonoConvInstance one{{7}, {7}, {7}};
    CHECK(solve_monoconv(one) == std::vector<bool>{false});
    MonoConvInstance two{{7, 1}, {7, 1}, {1, 7}};
    CHECK(solve_monoconv(two) == std::vector<bool>{false, true});
    MonoConvInstance sentinels{{-1, -1, -1}, {-2, -2, -2}, {-3, -3, -3}};
    CHECK(solve_monoconv(sentinels) == std::vector<bool>{false, false, false});
    CHECK_THROWS_AS(solve_monoconv(MonoConvInstance{{1}, {1, 2}, {1}}), std::invalid_argument);

    SeededRng rng(9);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + rng.uniform(0, 20);
        MonoConvInstance inst;
        for (std::size_t i = 0; i < n; ++i) {
            inst.x.push_back(static_cast<std::int64_t>(rng.uniform(0, 3)));
            inst.y.push_back(static_cast<std::int64_t>(rng.uniform(0, 3)));
            inst.z.push_back(static_cast<std::int64_t>(rng.uniform(0, 3)));
        }
        std::vector<bool> want(n, false);
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; i + j <= n; ++j)
                if (inst.x[i - 1] == inst.y[j - 1] && inst.y[j - 1] == inst.z[i + j - 1]) want[i + j - 1] = true;
        CHECK(solve_monoconv(inst) == want);
    }
}

TEST_CASE("naive witness structure") {
    NaiveWitnessStructure a({1, 0}, {0, 1});
    CHECK(a.query(3) == std::vector<Witness>{{1, 2}});
    NaiveWitnessStructure b({1, 1}, {1, 1});
    CHECK(b.query(2) == std::vector<Witness>{{1, 1}});
    CHECK_THROWS_AS(b.query(1), std::out_of_range);
    CHECK_THROWS_AS(b.query(5), std::out_of_range);

    SeededRng rng(4);
    std::vector<std::uint8_t> x(12), y(12);
    for (auto& v : x) v = static_cast<std::uint8_t>(rng.uniform(0, 1));
    for (auto& v : y) v = static_cast<std::uint8_t>(rng.uniform(0, 1));
    const auto ds = naive_witness_factory()(x, y);
    for (std::size_t k = 2; k <= 24; ++k) {
        std::vector<Witness> want;
        for (std::size_t i = 1; i <= 12; ++i)
            if (k > i && k - i <= 12 && x[i - 1] && y[k - i - 1]) want.emplace_back(i, k - i);
        CHECK(ds->query(k) == want);
    }
}
