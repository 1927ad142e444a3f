#include <doctest.h>

#include "detsum/appendix.hpp"
#include "detsum/oracle.hpp"

using namespace detsum;

namespace {

ThreeSumInstance no_instance(std::size_t n, Element u, std::uint64_t seed) {
    while (true) {
        auto inst = generate(n, u, seed++, 0);
        if (!solve_3sum(inst)) return inst;
    }
}

}  // namespace

TEST_CASE("mono conv: planted n = 27") {
    const auto inst = generate(27, Element{1} << 30, 4, 1);
    const auto r = reduce_3sum_to_monoconv(inst, solve_monoconv, {});
    CHECK(r.decision);
    CHECK(r.answers == solve_an3sum(inst));
    CHECK(r.stats.loads_ok);
}

TEST_CASE("mono conv: no-instance pair count") {
    const auto inst = no_instance(40, Element{1} << 30, 10);
    MonoConvParams p;
    p.delta = 0.1;
    const auto r = reduce_3sum_to_monoconv(inst, solve_monoconv, p);
    CHECK_FALSE(r.decision);
    CHECK(r.stats.brute_pairs <= r.stats.brute_pair_bound);
    CHECK(r.stats.loads_ok);
}

TEST_CASE("mono conv: degenerate inputs") {
    CHECK_FALSE(reduce_3sum_to_monoconv(ThreeSumInstance({5}, 5), solve_monoconv, {}).decision);
    CHECK(reduce_3sum_to_monoconv(ThreeSumInstance({3, 6}, 6), solve_monoconv, {}).decision);
    CHECK(reduce_3sum_to_monoconv(ThreeSumInstance({}, 6), solve_monoconv, {}).answers.empty());
}

TEST_CASE("mono conv stage on trichromatic input") {
    SeededRng rng(14);
    for (int round = 0; round < 30; ++round) {
        std::vector<Element> a, b, c;
        const Element u = 20 + rng.uniform(0, 300);
        for (int i = 0; i < 15; ++i) {
            a.push_back(rng.uniform(1, u));
            b.push_back(rng.uniform(1, u));
            c.push_back(rng.uniform(1, u));
        }
        const TriThreeSumInstance tri(ThreeSumInstance::from_values(a, u).elements(),
                                      ThreeSumInstance::from_values(b, u).elements(),
                                      ThreeSumInstance::from_values(c, u).elements(), u);
        for (const bool bucketed : {true, false}) {
            MonoConvParams p;
            p.delta = round % 3 == 0 ? 0.05 : 0.3;
            p.bucketed = bucketed;
            MonoConvStats stats;
            CHECK(monoconv_stage(tri, solve_monoconv, p, stats) == solve_an3sum(tri));
            CHECK(stats.loads_ok);
            CHECK(stats.brute_pairs <= stats.brute_pair_bound);
        }
    }
}

TEST_CASE("mono conv: lying solver is caught") {
    const MonoConvSolver liar = [](const MonoConvInstance& inst) {
        std::vector<bool> out(inst.size(), false);
        for (std::size_t k = 0; k < inst.size(); ++k) out[k] = inst.z[k] >= 0;
        return out;
    };
    const auto inst = no_instance(30, 1 << 20, 3);
    CHECK_THROWS_AS(reduce_3sum_to_monoconv(inst, liar, {}), InvariantViolation);
}

TEST_CASE("mono conv: random agreement") {
    SeededRng rng(19);
    for (int round = 0; round < 25; ++round) {
        const std::size_t n = 1 + rng.uniform(0, 50);
        const auto inst = generate(n, 3 * n + rng.uniform(0, Element{1} << 32), rng.next(), rng.uniform(0, n / 3));
        const auto r = reduce_3sum_to_monoconv(inst, solve_monoconv, {});
        CHECK(r.answers == solve_an3sum(inst));
    }
}

TEST_CASE("witness: planted n = 32") {
    const auto inst = generate(32, Element{1} << 30, 8, 2);
    const auto r = solve_3sum_via_witness_ds(inst, naive_witness_factory(), {});
    CHECK(r.decision);
    REQUIRE(r.witness);
    CHECK(r.witness->a + r.witness->b == r.witness->c);
    CHECK(inst.contains(r.witness->c));
}

TEST_CASE("witness: no-instance expansion bound") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto inst = no_instance(48, Element{1} << 30, 100 * seed);
        const auto r = solve_3sum_via_witness_ds(inst, naive_witness_factory(), {});
        CHECK_FALSE(r.decision);
        CHECK_FALSE(r.early_yes);
        CHECK(r.expanded <= r.pseudo_bound);
        CHECK(r.pseudo_bound == r.second.final_score);
        CHECK(r.pseudo_bound ==
              count_pseudo_bruteforce(inst, std::lcm(r.first.modulus, r.second.modulus)));
    }
}

TEST_CASE("witness: tiny n uses a single pair") {
    const ThreeSumInstance inst({1, 2, 3}, 3);
    WitnessParams p;
    p.delta = p.alpha / 2;
    const auto r = solve_3sum_via_witness_ds(inst, naive_witness_factory(), p);
    CHECK(r.second.modulus == 1);
    CHECK(r.pairs == 1);
    CHECK(r.decision);
}

TEST_CASE("witness: random agreement and parameters") {
    SeededRng rng(37);
    for (int round = 0; round < 30; ++round) {
        const std::size_t n = 1 + rng.uniform(0, 63);
        const auto inst = generate(n, 3 * n + rng.uniform(0, Element{1} << 32), rng.next(), rng.uniform(0, 1) ? n / 3 : 0);
        CHECK(solve_3sum_via_witness_ds(inst, naive_witness_factory(), {}).decision == solve_3sum(inst).has_value());
    }
    WitnessParams bad;
    bad.delta = 0.3;
    CHECK_THROWS_AS(solve_3sum_via_witness_ds(ThreeSumInstance({1}, 1), naive_witness_factory(), bad), ParameterError);
}
