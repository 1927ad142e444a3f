#include "detsum/set_query.hpp"

#include <charconv>
#include <sstream>

namespace detsum {

void SetQueryInstance::validate() const {
    for (std::size_t s = 0; s < sets.size(); ++s) {
        const auto& set = sets[s];
        if (set.size() > size_bound) {
            throw InvalidInstance("set " + std::to_string(s) + " exceeds the size bound");
        }
        for (std::size_t t = 0; t < set.size(); ++t) {
            if (set[t] < 1 || set[t] > universe) {
                throw InvalidInstance("set " + std::to_string(s) + " has an element outside [1, U]");
            }
            if (t > 0 && set[t - 1] >= set[t]) {
                throw InvalidInstance("set " + std::to_string(s) + " is not strictly increasing");
            }
        }
    }
    for (const auto& q : queries) {
        if (q.left >= sets.size() || q.right >= sets.size()) {
            throw InvalidInstance("query refers to a missing set");
        }
    }
}

namespace {

void append_values(std::string& out, const std::vector<Element>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += ' ';
        out += std::to_string(values[i]);
    }
    out += '\n';
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

/// Unsigned integers of one line; `line_no` is 1-based.
std::vector<std::uint64_t> numbers(std::string_view line, std::size_t line_no) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        if (line[pos] == ' ') {
            ++pos;
            continue;
        }
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), v);
        if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ')) {
            throw ParseError(line_no, pos + 1, "malformed integer");
        }
        out.push_back(v);
        pos = static_cast<std::size_t>(ptr - line.data());
    }
    return out;
}

std::vector<std::uint64_t> header(std::string_view line, std::string_view keyword, std::size_t count,
                                  std::size_t line_no) {
    if (line.substr(0, keyword.size()) != keyword) {
        throw ParseError(line_no, 1, "expected '" + std::string(keyword) + "'");
    }
    auto values = numbers(line.substr(keyword.size()), line_no);
    if (values.size() != count) throw ParseError(line_no, 1, "wrong number of header fields");
    return values;
}

}  // namespace

std::string serialize(const SetQueryInstance& inst) {
    std::string out = "SETFAM " + std::to_string(inst.sets.size()) + " " +
                      std::to_string(inst.universe) + " " + std::to_string(inst.size_bound) + "\n";
    for (const auto& s : inst.sets) append_values(out, s);
    out += "QUERIES " + std::to_string(inst.queries.size()) + "\n";
    for (const auto& q : inst.queries) {
        out += std::to_string(q.left) + " " + std::to_string(q.right) + " " +
               std::to_string(q.provenance.i) + " " + std::to_string(q.provenance.j) + " " +
               std::to_string(q.provenance.k) + " " + std::to_string(q.provenance.a) + "\n";
    }
    return out;
}

SetQueryInstance parse_set_query_instance(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.empty()) throw ParseError(1, 1, "empty input");
    const auto head = header(lines[0], "SETFAM", 3, 1);
    SetQueryInstance inst;
    inst.universe = head[1];
    inst.size_bound = head[2];
    const std::size_t n_sets = head[0];
    if (lines.size() < n_sets + 2) throw ParseError(lines.size(), 1, "missing set lines");
    for (std::size_t s = 0; s < n_sets; ++s) inst.sets.push_back(numbers(lines[s + 1], s + 2));
    const std::size_t qline = n_sets + 1;
    const auto qhead = header(lines[qline], "QUERIES", 1, qline + 1);
    if (lines.size() != qline + 1 + qhead[0]) {
        throw ParseError(lines.size(), 1, "query count does not match the QUERIES header");
    }
    for (std::size_t q = 0; q < qhead[0]; ++q) {
        const auto v = numbers(lines[qline + 1 + q], qline + 2 + q);
        if (v.size() != 6) throw ParseError(qline + 2 + q, 1, "query needs 6 fields");
        inst.queries.push_back({v[0], v[1],
                                {static_cast<std::uint32_t>(v[2]), static_cast<std::uint32_t>(v[3]),
                                 static_cast<std::uint32_t>(v[4]), v[5]}});
    }
    try {
        inst.validate();
    } catch (const InvalidInstance& e) {
        throw ParseError(1, 1, e.what());
    }
    return inst;
}

std::string serialize_answers(const std::vector<QueryAnswer>& answers) {
    std::string out;
    for (std::size_t q = 0; q < answers.size(); ++q) {
        out += std::to_string(q) + ":";
        for (const Element e : answers[q].intersection) out += " " + std::to_string(e);
        out += '\n';
    }
    return out;
}

std::vector<QueryAnswer> parse_answers(std::string_view text, std::size_t query_count) {
    std::vector<QueryAnswer> answers(query_count);
    std::vector<bool> seen(query_count, false);
    const auto lines = split_lines(text);
    for (std::size_t l = 0; l < lines.size(); ++l) {
        const auto line = lines[l];
        if (line.empty()) continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string_view::npos) throw ParseError(l + 1, 1, "expected '<index>:'");
        const auto idx = numbers(line.substr(0, colon), l + 1);
        if (idx.size() != 1 || idx[0] >= query_count) {
            throw ParseError(l + 1, 1, "query index out of range");
        }
        if (seen[idx[0]]) throw ParseError(l + 1, 1, "duplicate answer line");
        seen[idx[0]] = true;
        answers[idx[0]].intersection = numbers(line.substr(colon + 1), l + 1);
        answers[idx[0]].disjoint = answers[idx[0]].intersection.empty();
    }
    for (std::size_t q = 0; q < query_count; ++q) {
        if (!seen[q]) throw ParseError(lines.size() + 1, 1, "missing answer for query " + std::to_string(q));
    }
    return answers;
}

}  // namespace detsum
