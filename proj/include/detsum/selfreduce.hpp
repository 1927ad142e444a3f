#pragma once

// Dominance self-reduction: greedy size/span partition into groups, the set
// R of nontrivial group triples, materialized subinstances, and the trivial
// universe chop.

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "detsum/instances.hpp"

namespace detsum {

struct Group {
    std::size_t lo = 0;  ///< first index into the sorted values
    std::size_t hi = 0;  ///< one past the last index
    Element min = 0;
    Element max = 0;

    std::size_t size() const noexcept { return hi - lo; }
};

struct PartitionPlan {
    std::size_t g_requested = 1;
    std::size_t size_cap = 0;  ///< ceil(2n / g)
    Element span_cap = 0;      ///< ceil(2U / g)
    std::vector<Group> groups;
};

/// 0-based group indices.
struct GroupTriple {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;

    friend auto operator<=>(const GroupTriple&, const GroupTriple&) = default;
};

struct TripleSet {
    std::vector<GroupTriple> triples;  ///< lexicographic
};

struct DominanceReduction {
    PartitionPlan plan;
    TripleSet r;
};

/// `sorted` ascending (repeats allowed, as for multisets), inside [1, U].
/// Requires 1 <= g <= n when n > 0.
DominanceReduction dominance_partition(std::span<const Element> sorted, Element universe,
                                       std::size_t g);
DominanceReduction dominance_partition(const ThreeSumInstance& inst, std::size_t g);

/// Neither min_i + min_j > max_k nor max_i + max_j < min_k.
bool is_nontrivial(const PartitionPlan& plan, std::size_t i, std::size_t j, std::size_t k);

/// "PLAN g", the 0-based lo/hi pairs, "R", then 1-based triples.
std::string serialize(const PartitionPlan& plan, const TripleSet& r);

/// Re-based trichromatic subinstance of one triple. a' = a - offset_a,
/// b' = b - offset_b, c' = c - offset_a - offset_b; c values that cannot
/// be a sum are dropped.
struct SubInstance {
    TriThreeSumInstance tri;
    GroupTriple groups;
    Element offset_a = 0;
    Element offset_b = 0;

    SolutionTriple lift(const SolutionTriple& s) const {
        return SolutionTriple::genuine(s.a + offset_a, s.b + offset_b, s.c + offset_a + offset_b);
    }
};

std::vector<SubInstance> materialize_3sum(std::span<const Element> sorted,
                                          const DominanceReduction& reduction);

/// Same construction; the k slot carries the answers for group k.
std::vector<SubInstance> materialize_an3sum(std::span<const Element> sorted,
                                            const DominanceReduction& reduction);

/// ORs per-subinstance AN answers (aligned with each sub's C set) back onto
/// the positions of `sorted`.
std::vector<bool> recombine_an(std::span<const Element> sorted, const DominanceReduction& reduction,
                               const std::vector<SubInstance>& subs,
                               const std::vector<std::vector<bool>>& answers);

/// One interval triple (x, y, z) of the trivial chop, re-based.
struct ChopPiece {
    TriThreeSumInstance tri;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t z = 0;
    Element offset_a = 0;
    Element offset_b = 0;
    Element declared_target = 0;  ///< 2 U'

    SolutionTriple lift(const SolutionTriple& s) const {
        return SolutionTriple::genuine(s.a + offset_a, s.b + offset_b, s.c + offset_a + offset_b);
    }
};

/// Splits [1, U] into ceil(U / U') intervals of length U' and emits all
/// interval triples.
std::vector<ChopPiece> trivial_chop(const TriThreeSumInstance& inst, Element u_target);
std::vector<ChopPiece> trivial_chop(const ThreeSumInstance& inst, Element u_target);

}  // namespace detsum
