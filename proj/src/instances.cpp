#include "detsum/instances.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace detsum {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + what),
      line_(line),
      column_(column) {}

namespace {

void check_universe(Element universe) {
    if (universe < 1 || universe > kMaxUniverse) {
        throw InvalidInstance("universe bound " + std::to_string(universe) +
                              " outside [1, 2^62 - 1]");
    }
}

}  // namespace

// ---------------------------------------------------------------------------

ThreeSumInstance::ThreeSumInstance(std::vector<Element> elements, Element universe)
    : elements_(std::move(elements)), universe_(universe) {
    check_universe(universe_);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Element e = elements_[i];
        if (e < 1 || e > universe_) {
            throw InvalidInstance("element " + std::to_string(e) + " outside [1, " +
                                  std::to_string(universe_) + "]");
        }
        if (i > 0 && elements_[i - 1] >= e) {
            throw InvalidInstance("elements not strictly increasing at index " + std::to_string(i));
        }
    }
}

ThreeSumInstance ThreeSumInstance::from_values(std::vector<Element> values, Element universe) {
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return ThreeSumInstance(std::move(values), universe);
}

bool ThreeSumInstance::contains(Element value) const {
    return std::binary_search(elements_.begin(), elements_.end(), value);
}

TriThreeSumInstance::TriThreeSumInstance(std::vector<Element> a_set, std::vector<Element> b_set,
                                         std::vector<Element> c_set, Element universe)
    : a(std::move(a_set), universe), b(std::move(b_set), universe), c(std::move(c_set), universe) {}

ConvThreeSumInstance::ConvThreeSumInstance(std::vector<Element> values, Element universe)
    : values_(std::move(values)), universe_(universe) {
    check_universe(universe_);
    if (values_.empty()) {
        throw InvalidInstance("convolution instance needs at least one entry");
    }
    for (const Element v : values_) {
        if (v < 1 || v > universe_) {
            throw InvalidInstance("entry " + std::to_string(v) + " outside [1, " +
                                  std::to_string(universe_) + "]");
        }
    }
}

MultisetInstance::MultisetInstance(std::vector<MultisetEntry> entries, Element universe)
    : entries_(std::move(entries)), universe_(universe) {
    check_universe(universe_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (e.multiplicity == 0) {
            throw InvalidInstance("zero multiplicity for value " + std::to_string(e.value));
        }
        if (e.value < 1 || e.value > universe_) {
            throw InvalidInstance("value " + std::to_string(e.value) + " outside [1, " +
                                  std::to_string(universe_) + "]");
        }
        if (i > 0 && entries_[i - 1].value >= e.value) {
            throw InvalidInstance("multiset values not strictly increasing");
        }
    }
}

MultisetInstance MultisetInstance::from_values(std::vector<Element> values, Element universe) {
    std::sort(values.begin(), values.end());
    std::vector<MultisetEntry> entries;
    for (const Element v : values) {
        if (!entries.empty() && entries.back().value == v) {
            ++entries.back().multiplicity;
        } else {
            entries.push_back({v, 1});
        }
    }
    return MultisetInstance(std::move(entries), universe);
}

std::uint64_t MultisetInstance::size() const noexcept {
    std::uint64_t total = 0;
    for (const auto& e : entries_) total += e.multiplicity;
    return total;
}

std::vector<Element> MultisetInstance::expanded() const {
    std::vector<Element> out;
    out.reserve(size());
    for (const auto& e : entries_) out.insert(out.end(), e.multiplicity, e.value);
    return out;
}

SolutionTriple SolutionTriple::classify(Element a, Element b, Element c, std::uint64_t m) {
    if (a + b == c) return genuine(a, b, c);
    return {a, b, c, SolutionKind::pseudo, m};
}

// ---------------------------------------------------------------------------

std::uint64_t SeededRng::uniform(std::uint64_t low, std::uint64_t high) {
    if (low > high) throw std::invalid_argument("SeededRng::uniform: empty range");
    const std::uint64_t span = high - low;
    if (span == ~std::uint64_t{0}) return next();
    const std::uint64_t range = span + 1;
    // Largest multiple of `range` representable; draws above it are rejected.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % range + 1) % range;
    std::uint64_t draw = next();
    while (draw > limit) draw = next();
    return low + draw % range;
}

ThreeSumInstance generate(std::size_t n, Element universe, std::uint64_t seed,
                          std::size_t planted) {
    if (n < 1) throw std::invalid_argument("generate: n must be at least 1");
    check_universe(universe);
    if (universe / 3 < n) {
        throw std::invalid_argument("generate: universe " + std::to_string(universe) +
                                    " is below 3n = " + std::to_string(3 * n));
    }
    if (planted > n / 3) {
        throw std::invalid_argument("generate: planted must not exceed n / 3");
    }

    SeededRng rng(seed);
    std::set<Element> chosen;
    const Element half = universe / 2;
    for (std::size_t t = 0; t < planted; ++t) {
        const Element a = rng.uniform(1, half);
        const Element b = rng.uniform(1, half);
        chosen.insert(a);
        chosen.insert(b);
        chosen.insert(a + b);
    }
    while (chosen.size() < n) chosen.insert(rng.uniform(1, universe));
    return ThreeSumInstance(std::vector<Element>(chosen.begin(), chosen.end()), universe);
}

// ---------------------------------------------------------------------------

TagLayout tag_layout_for(Element universe) {
    check_universe(universe);
    TagLayout layout;
    layout.block = 4 * universe;
    return layout;
}

ThreeSumInstance tri_to_mono(const TriThreeSumInstance& tri) {
    const Element u = tri.universe();
    if (u > (kMaxUniverse - u) / (TagLayout::tag_c * 4)) {
        throw InvalidInstance("tri_to_mono: tagged universe 45U exceeds 2^62 - 1");
    }
    const TagLayout layout = tag_layout_for(u);
    std::vector<Element> out;
    out.reserve(tri.a.size() + tri.b.size() + tri.c.size());
    for (const Element v : tri.a.elements()) out.push_back(layout.encode_a(v));
    for (const Element v : tri.b.elements()) out.push_back(layout.encode_b(v));
    for (const Element v : tri.c.elements()) out.push_back(layout.encode_c(v));
    // Blocks are disjoint and already ascending, so `out` is sorted.
    return ThreeSumInstance(std::move(out), layout.encode_c(u));
}

// ---------------------------------------------------------------------------
// Text format

namespace {

void append_line(std::string& out, const std::vector<Element>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(values[i]);
    }
    out += '\n';
}

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column_, what); }

    bool at_end() const { return pos_ >= text_.size(); }

    void skip_spaces() {
        while (!at_end() && text_[pos_] == ' ') advance();
    }

    std::string_view word() {
        skip_spaces();
        const std::size_t start = pos_;
        while (!at_end() && text_[pos_] != ' ' && text_[pos_] != '\n') advance();
        return text_.substr(start, pos_ - start);
    }

    /// Reads one unsigned integer token; records its position for diagnostics.
    std::uint64_t number(const char* what) {
        skip_spaces();
        token_line_ = line_;
        token_column_ = column_;
        const std::size_t start = pos_;
        while (!at_end() && text_[pos_] != ' ' && text_[pos_] != '\n') advance();
        const std::string_view tok = text_.substr(start, pos_ - start);
        if (tok.empty()) {
            throw ParseError(token_line_, token_column_, std::string("expected ") + what);
        }
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc() || ptr != tok.data() + tok.size()) {
            throw ParseError(token_line_, token_column_,
                             std::string("malformed ") + what + " '" + std::string(tok) + "'");
        }
        return value;
    }

    void end_of_line() {
        skip_spaces();
        if (at_end()) fail("unexpected end of input, expected newline");
        if (text_[pos_] != '\n') fail("unexpected trailing content");
        advance();
    }

    void expect_eof() {
        if (!at_end()) fail("unexpected content after instance");
    }

    std::size_t token_line() const { return token_line_; }
    std::size_t token_column() const { return token_column_; }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
    std::size_t token_line_ = 1;
    std::size_t token_column_ = 1;
};

struct Token {
    Element value;
    std::size_t line;
    std::size_t column;
};

/// Reads `count` values on one line, each checked against [1, universe].
std::vector<Token> read_values(Cursor& cur, std::uint64_t count, Element universe) {
    std::vector<Token> tokens;
    tokens.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const Element v = cur.number("element");
        if (v < 1 || v > universe) {
            throw ParseError(cur.token_line(), cur.token_column(),
                             "element " + std::to_string(v) + " outside [1, " +
                                 std::to_string(universe) + "]");
        }
        tokens.push_back({v, cur.token_line(), cur.token_column()});
    }
    cur.end_of_line();
    return tokens;
}

std::vector<Element> as_set(std::vector<Token> tokens) {
    std::stable_sort(tokens.begin(), tokens.end(),
                     [](const Token& x, const Token& y) { return x.value < y.value; });
    std::vector<Element> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0 && tokens[i].value == tokens[i - 1].value) {
            const Token& dup = tokens[i].line * 1'000'000 + tokens[i].column >
                                       tokens[i - 1].line * 1'000'000 + tokens[i - 1].column
                                   ? tokens[i]
                                   : tokens[i - 1];
            throw ParseError(dup.line, dup.column,
                             "duplicate element " + std::to_string(dup.value));
        }
        out.push_back(tokens[i].value);
    }
    return out;
}

Element read_universe(Cursor& cur) {
    const Element u = cur.number("universe bound");
    if (u < 1 || u > kMaxUniverse) {
        throw ParseError(cur.token_line(), cur.token_column(),
                         "universe bound " + std::to_string(u) + " outside [1, 2^62 - 1]");
    }
    return u;
}

void expect_header(Cursor& cur, std::string_view keyword) {
    const std::string_view got = cur.word();
    if (got != keyword) {
        cur.fail("expected header '" + std::string(keyword) + "', found '" + std::string(got) + "'");
    }
}

}  // namespace

std::string serialize(const ThreeSumInstance& inst) {
    std::string out = "3SUM " + std::to_string(inst.size()) + " " + std::to_string(inst.universe()) + "\n";
    append_line(out, inst.elements());
    return out;
}

std::string serialize(const TriThreeSumInstance& inst) {
    std::string out = "TRI3SUM " + std::to_string(inst.a.size()) + " " + std::to_string(inst.b.size()) +
                      " " + std::to_string(inst.c.size()) + " " + std::to_string(inst.universe()) + "\n";
    append_line(out, inst.a.elements());
    append_line(out, inst.b.elements());
    append_line(out, inst.c.elements());
    return out;
}

std::string serialize(const ConvThreeSumInstance& inst) {
    std::string out = "CONV3SUM " + std::to_string(inst.size()) + " " + std::to_string(inst.universe()) + "\n";
    append_line(out, inst.values());
    return out;
}

ThreeSumInstance parse_three_sum(std::string_view text) {
    Cursor cur(text);
    expect_header(cur, "3SUM");
    const std::uint64_t n = cur.number("element count");
    const Element u = read_universe(cur);
    cur.end_of_line();
    auto values = as_set(read_values(cur, n, u));
    cur.expect_eof();
    return ThreeSumInstance(std::move(values), u);
}

TriThreeSumInstance parse_tri_three_sum(std::string_view text) {
    Cursor cur(text);
    expect_header(cur, "TRI3SUM");
    const std::uint64_t na = cur.number("size of A");
    const std::uint64_t nb = cur.number("size of B");
    const std::uint64_t nc = cur.number("size of C");
    const Element u = read_universe(cur);
    cur.end_of_line();
    auto a = as_set(read_values(cur, na, u));
    auto b = as_set(read_values(cur, nb, u));
    auto c = as_set(read_values(cur, nc, u));
    cur.expect_eof();
    return TriThreeSumInstance(std::move(a), std::move(b), std::move(c), u);
}

ConvThreeSumInstance parse_conv_three_sum(std::string_view text) {
    Cursor cur(text);
    expect_header(cur, "CONV3SUM");
    const std::uint64_t n = cur.number("vector length");
    const std::size_t len_line = cur.token_line();
    const std::size_t len_column = cur.token_column();
    const Element u = read_universe(cur);
    cur.end_of_line();
    if (n == 0) throw ParseError(len_line, len_column, "convolution instance needs n >= 1");
    const auto tokens = read_values(cur, n, u);
    cur.expect_eof();
    std::vector<Element> values;
    values.reserve(tokens.size());
    for (const auto& t : tokens) values.push_back(t.value);
    return ConvThreeSumInstance(std::move(values), u);
}

}  // namespace detsum
