#pragma once

// Offline set-query families (Set Disjointness / Set Intersection) and
// their text format.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "detsum/instances.hpp"

namespace detsum {

/// Where a query came from: group triple (i, j, k) of the self-reduction
/// (0-based) and the element a of group i it was generated for.
struct QueryProvenance {
    std::uint32_t i = 0;
    std::uint32_t j = 0;
    std::uint32_t k = 0;
    Element a = 0;

    friend bool operator==(const QueryProvenance&, const QueryProvenance&) = default;
};

struct SetQuery {
    std::size_t left = 0;
    std::size_t right = 0;
    QueryProvenance provenance;

    friend bool operator==(const SetQuery&, const SetQuery&) = default;
};

struct SetQueryInstance {
    Element universe = 1;
    std::vector<std::vector<Element>> sets;  ///< each sorted, inside [1, universe]
    std::vector<SetQuery> queries;
    std::size_t size_bound = 0;              ///< declared s

    std::size_t set_count() const noexcept { return sets.size(); }
    std::size_t query_count() const noexcept { return queries.size(); }

    /// Throws InvalidInstance on unsorted sets, out-of-range elements,
    /// oversized sets or query indices out of range.
    void validate() const;

    friend bool operator==(const SetQueryInstance&, const SetQueryInstance&) = default;
};

struct QueryAnswer {
    bool disjoint = true;
    std::vector<Element> intersection;

    friend bool operator==(const QueryAnswer&, const QueryAnswer&) = default;
};

/// "SETFAM N U s", one line per set, "QUERIES q", one line per query:
/// "left right i j k a" (indices 0-based).
std::string serialize(const SetQueryInstance& inst);
SetQueryInstance parse_set_query_instance(std::string_view text);

/// One line per query: "<index>: e1 e2 ...".
std::string serialize_answers(const std::vector<QueryAnswer>& answers);
std::vector<QueryAnswer> parse_answers(std::string_view text, std::size_t query_count);

}  // namespace detsum
