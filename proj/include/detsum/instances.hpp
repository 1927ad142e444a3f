#pragma once

// Problem-instance types shared by every reduction: monochromatic,
// trichromatic and convolution 3SUM, multisets of residues, and solution
// triples. Also the seeded generator and the text format.

#include <compare>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace detsum {

using Element = std::uint64_t;

/// Largest admissible universe bound. Sums of two elements stay far below
/// 2^64, so pairwise arithmetic never wraps.
inline constexpr Element kMaxUniverse = (Element{1} << 62) - 1;

/// Violated instance invariant (unsorted input, value outside [1, U], ...).
class InvalidInstance : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Text-format error carrying a 1-based line/column position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// A set A ⊆ [1, U] stored as a strictly increasing vector.
class ThreeSumInstance {
public:
    ThreeSumInstance() = default;

    /// Throws InvalidInstance unless `elements` is strictly increasing and
    /// inside [1, universe].
    ThreeSumInstance(std::vector<Element> elements, Element universe);

    /// Sorts and deduplicates before validating.
    static ThreeSumInstance from_values(std::vector<Element> values, Element universe);

    const std::vector<Element>& elements() const noexcept { return elements_; }
    Element universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(Element value) const;

    friend bool operator==(const ThreeSumInstance&, const ThreeSumInstance&) = default;

private:
    std::vector<Element> elements_;
    Element universe_ = 1;
};

/// Three sets A, B, C over a common universe; a solution is a + b = c with
/// a ∈ A, b ∈ B, c ∈ C.
struct TriThreeSumInstance {
    ThreeSumInstance a;
    ThreeSumInstance b;
    ThreeSumInstance c;

    TriThreeSumInstance() = default;
    TriThreeSumInstance(std::vector<Element> a_set, std::vector<Element> b_set,
                        std::vector<Element> c_set, Element universe);

    Element universe() const noexcept { return a.universe(); }

    friend bool operator==(const TriThreeSumInstance&, const TriThreeSumInstance&) = default;
};

/// Vector X ∈ [1, U]^n, indexed 1-based by the problem definition but
/// stored 0-based.
class ConvThreeSumInstance {
public:
    ConvThreeSumInstance() = default;
    ConvThreeSumInstance(std::vector<Element> values, Element universe);

    const std::vector<Element>& values() const noexcept { return values_; }
    Element universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return values_.size(); }

    friend bool operator==(const ConvThreeSumInstance&, const ConvThreeSumInstance&) = default;

private:
    std::vector<Element> values_;
    Element universe_ = 1;
};

struct MultisetEntry {
    Element value = 0;
    std::uint64_t multiplicity = 0;

    friend bool operator==(const MultisetEntry&, const MultisetEntry&) = default;
};

/// Sorted (value, multiplicity) pairs. Reduced instances such as
/// {a mod m, (a mod m) + m} are multisets.
class MultisetInstance {
public:
    MultisetInstance() = default;
    MultisetInstance(std::vector<MultisetEntry> entries, Element universe);

    /// Counts repeated values; input need not be sorted.
    static MultisetInstance from_values(std::vector<Element> values, Element universe);

    const std::vector<MultisetEntry>& entries() const noexcept { return entries_; }
    Element universe() const noexcept { return universe_; }

    /// Total size counting multiplicity.
    std::uint64_t size() const noexcept;

    /// Every value repeated by its multiplicity, ascending.
    std::vector<Element> expanded() const;

    friend bool operator==(const MultisetInstance&, const MultisetInstance&) = default;

private:
    std::vector<MultisetEntry> entries_;
    Element universe_ = 1;
};

enum class SolutionKind { genuine, pseudo };

struct SolutionTriple {
    Element a = 0;
    Element b = 0;
    Element c = 0;
    SolutionKind kind = SolutionKind::genuine;
    /// Modulus under which a + b ≡ c holds; 0 for genuine triples.
    std::uint64_t modulus = 0;

    static SolutionTriple genuine(Element a, Element b, Element c) {
        return {a, b, c, SolutionKind::genuine, 0};
    }
    /// Classifies the triple: genuine if a + b = c, otherwise pseudo modulo m.
    static SolutionTriple classify(Element a, Element b, Element c, std::uint64_t m);

    friend bool operator==(const SolutionTriple&, const SolutionTriple&) = default;
    friend auto operator<=>(const SolutionTriple& lhs, const SolutionTriple& rhs) {
        return std::tie(lhs.a, lhs.b, lhs.c) <=> std::tie(rhs.a, rhs.b, rhs.c);
    }
};

// ---------------------------------------------------------------------------
// Generation

/// Reproducible instance: n distinct values from [1, U] drawn with
/// std::mt19937_64 seeded by `seed`, of which the first `planted` triples
/// are inserted as {a, b, a + b}. Requires n ≥ 1, U ≥ 3n, planted ≤ n / 3.
ThreeSumInstance generate(std::size_t n, Element universe, std::uint64_t seed,
                          std::size_t planted);

/// std::mt19937_64 (whose output sequence the standard fixes) plus an
/// unbiased bounded draw; the std distributions are implementation-defined,
/// so they are not used anywhere reproducibility matters.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    std::uint64_t next() { return engine_(); }
    /// Uniform on [low, high], inclusive, by rejection sampling.
    std::uint64_t uniform(std::uint64_t low, std::uint64_t high);

private:
    std::mt19937_64 engine_;
};

// ---------------------------------------------------------------------------
// Trichromatic -> monochromatic

/// Tag offsets used by tri_to_mono: a ↦ a + D, b ↦ b + 10D, c ↦ c + 11D.
struct TagLayout {
    Element block = 0;  ///< D = 4U
    static constexpr Element tag_a = 1;
    static constexpr Element tag_b = 10;
    static constexpr Element tag_c = 11;

    Element encode_a(Element v) const { return v + tag_a * block; }
    Element encode_b(Element v) const { return v + tag_b * block; }
    Element encode_c(Element v) const { return v + tag_c * block; }
};

TagLayout tag_layout_for(Element universe);

/// One-set instance with a solution iff `tri` has one. Throws
/// InvalidInstance when 11·D + U exceeds kMaxUniverse.
ThreeSumInstance tri_to_mono(const TriThreeSumInstance& tri);

// ---------------------------------------------------------------------------
// Text format

std::string serialize(const ThreeSumInstance& inst);
std::string serialize(const TriThreeSumInstance& inst);
std::string serialize(const ConvThreeSumInstance& inst);

ThreeSumInstance parse_three_sum(std::string_view text);
TriThreeSumInstance parse_tri_three_sum(std::string_view text);
ConvThreeSumInstance parse_conv_three_sum(std::string_view text);

}  // namespace detsum
