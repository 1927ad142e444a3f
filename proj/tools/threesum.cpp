// threesum: generate instances, run reductions, benchmark the hashing step.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "detsum/appendix.hpp"
#include "detsum/hashing.hpp"
#include "detsum/instances.hpp"
#include "detsum/modcount.hpp"
#include "detsum/oracle.hpp"
#include "detsum/setreduce.hpp"
#include "detsum/unireduce.hpp"

using namespace detsum;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;
constexpr int kInvariant = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot open " + path);
        buf << in.rdbuf();
    }
    return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

std::string fmt_double(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

std::string fmt_triple(const std::optional<SolutionTriple>& t) {
    if (!t) return "none";
    return std::to_string(t->a) + "," + std::to_string(t->b) + "," + std::to_string(t->c);
}

/// Line-oriented key=value report; keys keep insertion order.
class Report {
public:
    template <class T>
    void add(const std::string& key, const T& value) {
        std::ostringstream s;
        s << value;
        lines_.push_back(key + "=" + s.str());
    }
    void add_hashing(const std::string& prefix, const ModulusSelection& h) {
        add(prefix + "modulus", h.modulus);
        add(prefix + "rounds", h.trace.size());
        add(prefix + "padding", h.padding);
        add(prefix + "initial_score", h.initial_score);
        add(prefix + "final_score", h.final_score);
        add(prefix + "bound", fmt_double(h.bound));
        add(prefix + "certified_bound", h.certified_bound);
        add(prefix + "verdict", h.verdict == HashVerdict::yes_instance ? "yes_instance" : "modulus");
        std::istringstream trace(h.trace_text());
        std::string line;
        for (std::size_t r = 1; std::getline(trace, line); ++r) {
            add(prefix + "round." + std::to_string(r), line);
        }
    }
    std::string text() const {
        std::string out;
        for (const auto& l : lines_) out += l + "\n";
        return out;
    }

private:
    std::vector<std::string> lines_;
};

bool answers_agree(const std::vector<bool>& got, const std::vector<bool>& want) { return got == want; }

std::size_t count_true(const std::vector<bool>& v) {
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), true));
}

struct ReduceArgs {
    std::string pipeline = "cubic";
    std::string backend = "oracle";
    std::string external_cmd;
    std::optional<double> mu, delta, alpha, beta, rho, heavy;
    bool verify = false;
    std::string report_path;
    std::string input = "-";
};

template <class T>
T pick(const std::optional<T>& v, T fallback) {
    return v ? *v : fallback;
}

int run_reduce(const ReduceArgs& args) {
    const auto inst = parse_three_sum(read_input(args.input));
    const bool external = args.backend == "external";
    if (external && args.external_cmd.empty()) throw UsageError("--backend external needs --external-cmd");
    if (external && args.pipeline != "setdisj" && args.pipeline != "setint") {
        throw UsageError("the external backend is available for setdisj and setint only");
    }

    Report rep;
    rep.add("pipeline", args.pipeline);
    rep.add("backend", args.backend);
    rep.add("n", inst.size());
    rep.add("universe", inst.universe());

    const auto start = std::chrono::steady_clock::now();
    std::optional<bool> decision;
    std::optional<SolutionTriple> witness;
    std::optional<std::vector<bool>> answers;

    const auto tri_decide = [](const TriThreeSumInstance& t) { return solve_3sum(t).has_value(); };
    const auto tri_an = [](const TriThreeSumInstance& t) { return solve_an3sum(t); };

    if (args.pipeline == "cubic") {
        CubicParams p;
        p.mu = pick(args.mu, p.mu);
        p.delta = pick(args.delta, p.delta);
        p.alpha = pick(args.alpha, p.alpha);
        rep.add("mu", p.mu);
        rep.add("delta", p.delta);
        rep.add("alpha", p.alpha);
        const auto r = reduce_3sum_cubic(inst, tri_decide, p);
        rep.add_hashing("hash.", r.hashing);
        rep.add("early_yes", r.early_yes);
        rep.add("groups", r.groups);
        rep.add("subinstances", r.subinstances);
        rep.add("chop_pieces", r.chop_pieces);
        rep.add("chop_target", r.chop_target);
        rep.add("positive_subinstances", r.positive_subinstances);
        rep.add("enumerated", r.enumerated);
        rep.add("caps_ok", r.caps_ok);
        decision = r.decision;
        witness = r.witness;
    } else if (args.pipeline == "an-quadratic") {
        AnParams p;
        p.mu = pick(args.mu, p.mu);
        p.delta = pick(args.delta, p.delta);
        p.alpha = pick(args.alpha, p.alpha);
        rep.add("mu", p.mu);
        rep.add("delta", p.delta);
        rep.add("alpha", p.alpha);
        const auto r = reduce_an3sum_quadratic(inst, tri_an, p);
        rep.add_hashing("hash.", r.hashing);
        rep.add("groups", r.groups);
        rep.add("subinstances", r.subinstances);
        rep.add("chop_pieces", r.chop_pieces);
        rep.add("chop_target", r.chop_target);
        rep.add("flagged", r.flagged);
        rep.add("enumerated", r.enumerated);
        rep.add("caps_ok", r.caps_ok);
        answers = r.answers;
    } else if (args.pipeline == "conv-quadratic") {
        ConvParams p;
        p.heavy_exponent = pick(args.heavy, p.heavy_exponent);
        p.cubic.mu = pick(args.mu, p.cubic.mu);
        p.cubic.delta = pick(args.delta, p.cubic.delta);
        p.cubic.alpha = pick(args.alpha, p.cubic.alpha);
        rep.add("heavy_exponent", p.heavy_exponent);
        const auto r = reduce_conv3sum_quadratic(inst, solve_conv3sum, p);
        rep.add("composed", r.composed);
        rep.add("stages", r.stages);
        rep.add("stage_modulus", r.modulus);
        rep.add("heavy_elements", r.heavy_elements);
        rep.add("grid_cells", r.grid_cells);
        rep.add("solver_calls", r.solver_calls);
        rep.add("max_entry", r.max_entry);
        rep.add("entry_limit", r.entry_limit);
        rep.add("entries_ok", r.entries_ok);
        decision = r.decision;
    } else if (args.pipeline == "listing") {
        ListingParams p;
        p.mu = pick(args.mu, p.mu);
        p.delta = pick(args.delta, p.delta);
        rep.add("mu", p.mu);
        rep.add("delta", p.delta);
        const auto r = reduce_listing_small_universe(
            inst, [](const ThreeSumInstance& s) { return list_solutions(s); }, p);
        rep.add_hashing("hash.", r.hashing);
        rep.add("dummies", r.dummies);
        rep.add("listed", r.listed);
        rep.add("cap", r.cap);
        rep.add("checked_pairs", r.checked_pairs);
        decision = r.decision;
        witness = r.witness;
    } else if (args.pipeline == "setdisj" || args.pipeline == "setint") {
        const double alpha = pick(args.alpha, 0.5);
        rep.add("alpha", alpha);
        SetDriverResult r;
        if (args.pipeline == "setdisj") {
            const double rho = pick(args.rho, 0.25);
            rep.add("rho", rho);
            const auto oracle = external ? external_disjointness(args.external_cmd) : oracle_disjointness();
            r = solve_3sum_via_setdisjointness(inst, alpha, rho, oracle, args.delta);
        } else {
            const double beta = pick(args.beta, 0.0);
            rep.add("beta", beta);
            const auto oracle = external ? external_intersection(args.external_cmd) : oracle_intersection();
            r = solve_3sum_via_setintersection(inst, alpha, beta, oracle, args.delta);
        }
        rep.add_hashing("hash.", r.hashing);
        rep.add("early_yes", r.early_yes);
        rep.add("family.universe", r.shape.universe);
        rep.add("family.sets", r.shape.n_sets);
        rep.add("family.s", r.shape.s);
        rep.add("family.q", r.shape.q);
        rep.add("t", r.t);
        rep.add("split_queries", r.split_queries);
        rep.add("saturated", r.saturated);
        rep.add("listed", r.listed);
        rep.add("recovered", r.recovered);
        decision = r.decision;
        witness = r.witness;
    } else if (args.pipeline == "monoconv") {
        MonoConvParams p;
        p.delta = pick(args.delta, p.delta);
        rep.add("delta", p.delta);
        const auto r = reduce_3sum_to_monoconv(inst, solve_monoconv, p);
        rep.add_hashing("hash.", r.hashing);
        rep.add("stages", r.stats.stages);
        rep.add("subinstances", r.stats.subinstances);
        rep.add("grid_cells", r.stats.grid_cells);
        rep.add("reports", r.stats.reports);
        rep.add("heavy_total", r.stats.heavy_total);
        rep.add("heavy_soft_bound", fmt_double(r.stats.heavy_soft_bound));
        rep.add("brute_pairs", r.stats.brute_pairs);
        rep.add("brute_pair_bound", r.stats.brute_pair_bound);
        rep.add("loads_ok", r.stats.loads_ok);
        answers = r.answers;
    } else if (args.pipeline == "witness") {
        WitnessParams p;
        p.alpha = pick(args.alpha, p.alpha);
        p.delta = pick(args.delta, p.delta);
        rep.add("alpha", p.alpha);
        rep.add("delta", p.delta);
        const auto r = solve_3sum_via_witness_ds(inst, naive_witness_factory(), p);
        rep.add_hashing("hash1.", r.first);
        rep.add_hashing("hash2.", r.second);
        rep.add("early_yes", r.early_yes);
        rep.add("pairs", r.pairs);
        rep.add("queries", r.queries);
        rep.add("witnesses", r.witnesses);
        rep.add("expanded", r.expanded);
        rep.add("pseudo_bound", r.pseudo_bound);
        decision = r.decision;
        witness = r.witness;
    } else {
        throw UsageError("unknown pipeline " + args.pipeline);
    }

    int code = kOk;
    if (decision) rep.add("decision", *decision ? "yes" : "no");
    if (witness) rep.add("witness", fmt_triple(witness));
    if (answers) rep.add("answers_true", count_true(*answers));
    if (witness && !(witness->a + witness->b == witness->c && inst.contains(witness->a) &&
                     inst.contains(witness->b) && inst.contains(witness->c))) {
        throw InvariantViolation("reported witness is not a solution");
    }
    if (args.verify) {
        bool agree = true;
        if (decision) agree = *decision == solve_3sum(inst).has_value();
        if (answers) agree = answers_agree(*answers, solve_an3sum(inst));
        rep.add("verify", agree ? "agree" : "mismatch");
        if (!agree) code = kMismatch;
    } else {
        rep.add("verify", "skipped");
    }
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    rep.add("wall_ms", fmt_double(ms.count()));

    std::cout << rep.text();
    if (!args.report_path.empty()) write_output(args.report_path, rep.text());
    return code;
}

struct BenchArgs {
    std::size_t n_min = 32;
    std::size_t n_max = 256;
    std::size_t n_step = 32;
    Element universe = Element{1} << 40;
    std::uint64_t seed = 1;
    std::size_t trials = 9;
    double mu = 1.5;
    double delta = 0.5;
    std::string out;
};

int run_bench(const BenchArgs& args) {
    if (args.n_step == 0) throw UsageError("--n-step must be positive");
    std::string csv = "n,S_det,S_random_median,bound_B\n";
    for (std::size_t n = args.n_min; n <= args.n_max; n += args.n_step) {
        if (args.universe < 3 * n) throw UsageError("--universe must be at least 3n");
        const auto inst = generate(n, args.universe, args.seed + n, 0);
        const auto sel = select_modulus_few_false_positives({inst}, {args.mu, args.delta, n});
        // Same rounds and padding, each prime drawn uniformly from its pool.
        SeededRng rng(args.seed ^ (0x9e3779b97f4a7c15ULL * n));
        std::vector<std::uint64_t> scores;
        for (std::size_t t = 0; t < args.trials; ++t) {
            std::uint64_t m = 1;
            for (const auto& round : sel.trace) {
                m *= round.candidates[rng.uniform(0, round.candidates.size() - 1)].prime;
            }
            scores.push_back(count_solutions_mod(inst, m * sel.padding));
        }
        std::sort(scores.begin(), scores.end());
        const std::uint64_t median = scores.empty() ? 0 : scores[scores.size() / 2];
        csv += std::to_string(n) + "," + std::to_string(sel.final_score) + "," + std::to_string(median) + "," +
               fmt_double(sel.bound) + "\n";
        if (args.n_max - n < args.n_step) break;
    }
    write_output(args.out, csv);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic 3SUM reductions"};
    app.require_subcommand(1);

    std::size_t gen_n = 0;
    Element gen_u = 0;
    std::uint64_t gen_seed = 0;
    std::size_t gen_planted = 0;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "Generate a seeded instance");
    gen->add_option("--n", gen_n, "Number of elements")->required();
    gen->add_option("--universe", gen_u, "Universe bound U")->required();
    gen->add_option("--seed", gen_seed, "RNG seed");
    gen->add_option("--planted", gen_planted, "Planted solutions");
    gen->add_option("--out", gen_out, "Output file (stdout if omitted)");

    ReduceArgs ra;
    auto* red = app.add_subcommand("reduce", "Run a reduction pipeline");
    red->add_option("--pipeline", ra.pipeline)
        ->check(CLI::IsMember({"cubic", "an-quadratic", "conv-quadratic", "listing", "setdisj", "setint",
                               "monoconv", "witness"}));
    red->add_option("--backend", ra.backend)->check(CLI::IsMember({"oracle", "external"}));
    red->add_option("--external-cmd", ra.external_cmd, "Shell command answering set queries");
    red->add_option("--mu", ra.mu);
    red->add_option("--delta", ra.delta);
    red->add_option("--alpha", ra.alpha);
    red->add_option("--beta", ra.beta);
    red->add_option("--rho", ra.rho);
    red->add_option("--heavy", ra.heavy, "Heavy exponent for conv-quadratic");
    red->add_flag("--verify", ra.verify, "Compare with the direct oracle");
    red->add_option("--report", ra.report_path, "Also write the report to this file");
    red->add_option("input", ra.input, "Instance file, - for stdin")->required();

    BenchArgs ba;
    auto* bench = app.add_subcommand("bench", "Hashing trace versus random primes, as CSV");
    bench->add_option("--n-min", ba.n_min);
    bench->add_option("--n-max", ba.n_max);
    bench->add_option("--n-step", ba.n_step);
    bench->add_option("--universe", ba.universe);
    bench->add_option("--seed", ba.seed);
    bench->add_option("--trials", ba.trials);
    bench->add_option("--mu", ba.mu);
    bench->add_option("--delta", ba.delta);
    bench->add_option("--out", ba.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen) {
            if (gen_n == 0) throw UsageError("--n must be positive");
            if (gen_u < 3 * gen_n) throw UsageError("--universe must be at least 3n");
            if (gen_planted > gen_n / 3) throw UsageError("--planted must be at most n / 3");
            write_output(gen_out, serialize(generate(gen_n, gen_u, gen_seed, gen_planted)));
            return kOk;
        }
        if (*red) return run_reduce(ra);
        return run_bench(ba);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParameterError& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "malformed instance: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidInstance& e) {
        std::cerr << "invalid instance: " << e.what() << "\n";
        return kUsage;
    } catch (const InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvariant;
    }
}
