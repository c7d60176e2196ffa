// treembed: check, generate and benchmark tree pattern embeddings.
//
// Exit status: 0 decided, 1 usage or input error, 2 unknown (budget ran out).

#include "treembed/embedding.hpp"
#include "treembed/exact.hpp"
#include "treembed/poly.hpp"
#include "treembed/reductions.hpp"
#include "treembed/suites.hpp"
#include "treembed/text_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace treembed;

namespace {

constexpr int kExitDecided = 0;
constexpr int kExitError = 1;
constexpr int kExitUnknown = 2;

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

template <class F>
auto parse_file(const fs::path& path, F parse) {
    try {
        return parse(read_file(path));
    } catch (const Error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

// ---- check -----------------------------------------------------------------

struct CheckArgs {
    std::string kind;
    std::string tree;
    std::string pattern;
    std::string algorithm = "auto";
    bool witness = false;
    bool json = false;
    std::uint64_t budget = 0;
};

CheckResult run_algorithm(const Tree& t, const Pattern& p, EmbeddingKind kind, const std::string& algorithm,
                          const SearchConfig& search) {
    if (algorithm == "auto") return dispatch(t, p, kind, DispatchOptions{search});
    if (algorithm == "oracle") return brute_force(t, p, kind);
    if (algorithm == "exact") {
        // std and lca have complete polynomial deciders; there is nothing to search.
        switch (kind) {
        case EmbeddingKind::Std: return check_std(t, p);
        case EmbeddingKind::Lca: return check_lca(t, p);
        case EmbeddingKind::Inj: return solve_inj(t, p, search);
        case EmbeddingKind::Anc: return solve_anc(t, p, search);
        }
    }
    // poly
    if (kind == EmbeddingKind::Std || p.is_path()) return check_std(t, p);
    if (kind == EmbeddingKind::Lca || !p.has_descendant_edges()) return check_lca(t, p);
    if (kind == EmbeddingKind::Anc) {
        try {
            return check_anc_bounded(t, p, AncLimits{search.node_budget});
        } catch (const BudgetExceeded&) {
            CheckResult r;
            r.verdict = Verdict::Unknown;
            r.algorithm = "check_anc_bounded";
            return r;
        }
    }
    if (p.height() <= 1) return check_inj_height1(t, p);
    throw InputError("no polynomial algorithm applies to inj with a pattern of height " +
                     std::to_string(p.height()) + "; use --algorithm auto or exact");
}

json report_json(const Tree& t, const Pattern& p, EmbeddingKind kind, const CheckResult& r, bool with_witness) {
    json j;
    j["verdict"] = verdict_name(r.verdict);
    j["kind"] = kind_name(kind);
    j["algorithm"] = r.algorithm;
    if (with_witness && r.witness) {
        json w = json::array();
        for (NodeId m = 0; m < p.size(); ++m)
            w.push_back({{"pattern", format_dewey(dewey_of(p, m))},
                         {"tree", format_dewey(dewey_of(t, r.witness->image[m]))}});
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    j["stats"] = {{"nodes_explored", r.stats.nodes_explored},
                  {"elapsed_ms", std::chrono::duration<double, std::milli>(r.stats.elapsed).count()}};
    return j;
}

std::string report_text(const Tree& t, const Pattern& p, const CheckResult& r, bool with_witness) {
    std::string s(verdict_name(r.verdict));
    s += '\n';
    if (with_witness && r.witness) s += format_witness(t, p, *r.witness);
    return s;
}

int exit_for(Verdict v) { return v == Verdict::Unknown ? kExitUnknown : kExitDecided; }

SearchConfig search_config(std::uint64_t budget) {
    SearchConfig cfg;
    if (const char* env = std::getenv("TREEMBED_BUDGET")) {
        try {
            cfg.node_budget = std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string("TREEMBED_BUDGET is not a number: ") + env);
        }
    }
    if (budget != 0) cfg.node_budget = budget;
    if (cfg.node_budget == 0) throw InputError("the search budget must be positive");
    return cfg;
}

int cmd_check(const CheckArgs& a) {
    auto kind = parse_kind(a.kind);
    if (!kind) throw InputError("unknown kind '" + a.kind + "'");
    SearchConfig search = search_config(a.budget);
    const bool tree_dir = fs::is_directory(a.tree);
    const bool pattern_dir = fs::is_directory(a.pattern);
    if (tree_dir != pattern_dir) throw InputError("--tree and --pattern must both be files or both be directories");

    if (!tree_dir) {
        Tree t = parse_file(a.tree, parse_tree);
        Pattern p = parse_file(a.pattern, parse_pattern);
        CheckResult r = run_algorithm(t, p, *kind, a.algorithm, search);
        if (a.json)
            std::cout << report_json(t, p, *kind, r, a.witness).dump() << '\n';
        else
            std::cout << report_text(t, p, r, a.witness);
        return exit_for(r.verdict);
    }

    // Batch: pair files by stem, check pairs concurrently, report in order.
    std::map<std::string, fs::path> trees, patterns;
    for (const auto& e : fs::directory_iterator(a.tree))
        if (e.is_regular_file()) trees[e.path().stem().string()] = e.path();
    for (const auto& e : fs::directory_iterator(a.pattern))
        if (e.is_regular_file()) patterns[e.path().stem().string()] = e.path();
    std::vector<std::pair<std::string, std::pair<fs::path, fs::path>>> pairs;
    for (const auto& [stem, tp] : trees)
        if (auto it = patterns.find(stem); it != patterns.end()) pairs.push_back({stem, {tp, it->second}});
    if (pairs.empty()) throw InputError("no tree and pattern files share a name");

    std::vector<std::string> lines(pairs.size());
    std::vector<int> status(pairs.size(), kExitDecided);
    const auto count = static_cast<std::int64_t>(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto& [stem, files] = pairs[static_cast<std::size_t>(i)];
        try {
            Tree t = parse_file(files.first, parse_tree);
            Pattern p = parse_file(files.second, parse_pattern);
            CheckResult r = run_algorithm(t, p, *kind, a.algorithm, search);
            if (a.json) {
                json j = report_json(t, p, *kind, r, a.witness);
                j["name"] = stem;
                lines[i] = j.dump() + '\n';
            } else {
                lines[i] = stem + ": " + report_text(t, p, r, a.witness);
            }
            status[i] = exit_for(r.verdict);
        } catch (const std::exception& e) {
            lines[i] = stem + ": error: " + e.what() + '\n';
            status[i] = kExitError;
        }
    }
    for (const auto& l : lines) std::cout << l;
    if (std::count(status.begin(), status.end(), kExitError)) return kExitError;
    if (std::count(status.begin(), status.end(), kExitUnknown)) return kExitUnknown;
    return kExitDecided;
}

// ---- gen -------------------------------------------------------------------

struct GenArgs {
    std::string reduction;
    std::string cnf;
    std::string out_tree;
    std::string out_pattern;
};

int cmd_gen(const GenArgs& a) {
    auto kind = parse_reduction(a.reduction);
    if (!kind) throw InputError("unknown reduction '" + a.reduction + "'");
    CnfFormula f = parse_file(a.cnf, parse_dimacs);
    if (f.clauses.empty()) throw InputError(a.cnf + ": the formula has no clauses");
    Instance inst = generate(*kind, f);
    write_file(a.out_tree, render_tree(inst.tree) + '\n');
    write_file(a.out_pattern, render_pattern(inst.pattern) + '\n');
    std::cout << "tree: " << inst.tree.size() << " nodes\n";
    std::cout << "pattern: " << inst.pattern.size() << " nodes\n";
    return kExitDecided;
}

// ---- selftest --------------------------------------------------------------

int cmd_selftest(const SelftestOptions& opts) {
    bool ok = true;
    auto print = [&](const SuiteReport& r) {
        std::cout << r.name << ": " << r.cases << " cases, " << r.failures << " failures";
        if (r.skipped) std::cout << ", " << r.skipped << " skipped (budget)";
        if (r.witnesses_checked) std::cout << ", " << r.witnesses_checked << " witnesses verified";
        std::cout << '\n';
        if (!r.note.empty()) std::cout << "  " << r.note << '\n';
        for (const auto& d : r.details) std::cout << "  FAIL " << d << '\n';
        if (r.failures > r.details.size()) std::cout << "  ... " << r.failures - r.details.size() << " more\n";
        ok = ok && r.passed();
        std::cout.flush();
    };
    for (const auto& r : run_structural_suites(opts)) print(r);
    print(run_height_one_suite(opts));
    print(run_sat_suite(opts));
    std::cout << (ok ? "all suites passed" : "some suites FAILED") << '\n';
    return ok ? kExitDecided : kExitError;
}

// ---- bench -----------------------------------------------------------------

struct BenchArgs {
    std::string suite;
    std::vector<std::size_t> sizes;
    bool json = false;
    std::uint64_t seed = 7;
};

struct BenchRow {
    std::size_t size;
    std::size_t pattern_nodes;
    std::string algorithm;
    std::string verdict;
    double ms;
    std::uint64_t nodes_explored;
    std::string note;
};

const std::vector<std::string> kBenchAlphabet{"a", "b", "c", "d"};

std::vector<BenchRow> bench_lca_scale(const BenchArgs& a) {
    std::vector<std::size_t> sizes = a.sizes.empty() ? std::vector<std::size_t>{1000, 10000, 100000} : a.sizes;
    std::mt19937_64 rng(a.seed);
    std::vector<BenchRow> rows;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        Tree t = random_tree(rng, sizes[i], kBenchAlphabet);
        Pattern p = sample_pattern(rng, t, std::max<std::size_t>(1, sizes[i] / 100), 0.5, 0.2);
        CheckResult r = check_lca(t, p);
        std::string note;
        if (i == 0) note = lca_table(t, p) == reference::lca_table(t, p) ? "matches serial reference" : "MISMATCH";
        rows.push_back({sizes[i], p.size(), r.algorithm, std::string(verdict_name(r.verdict)),
                        std::chrono::duration<double, std::milli>(r.stats.elapsed).count(), 0, note});
    }
    return rows;
}

std::vector<BenchRow> bench_anc_bounded(const BenchArgs& a) {
    std::vector<std::size_t> sizes = a.sizes.empty() ? std::vector<std::size_t>{1000, 10000} : a.sizes;
    std::mt19937_64 rng(a.seed);
    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        Tree t = random_tree(rng, n, kBenchAlphabet);
        Pattern p = random_bounded_pattern(rng, 15, {"a", "b", "*"}, 0.7, 2);
        std::string verdict;
        double ms = 0;
        try {
            CheckResult r = check_anc_bounded(t, p);
            verdict = verdict_name(r.verdict);
            ms = std::chrono::duration<double, std::milli>(r.stats.elapsed).count();
        } catch (const BudgetExceeded&) {
            verdict = "budget";
        }
        rows.push_back({n, p.size(), "check_anc_bounded", verdict, ms, 0, ""});
    }
    return rows;
}

std::vector<BenchRow> bench_reduction_growth(const BenchArgs& a) {
    std::vector<std::size_t> sizes = a.sizes.empty() ? std::vector<std::size_t>{2, 3, 4, 5} : a.sizes;
    std::mt19937_64 rng(a.seed);
    std::vector<BenchRow> rows;
    for (std::size_t n : sizes) {
        // n variables, n clauses of width up to 3.
        CnfFormula f{static_cast<std::uint32_t>(n), {}};
        for (std::size_t c = 0; c < n; ++c) {
            std::vector<int> cl;
            for (std::size_t w = 0; w < std::min<std::size_t>(3, n); ++w) {
                int v = static_cast<int>(rng() % n) + 1;
                if (std::find(cl.begin(), cl.end(), v) != cl.end() || std::find(cl.begin(), cl.end(), -v) != cl.end())
                    continue;
                cl.push_back(rng() & 1U ? v : -v);
            }
            f.clauses.push_back(cl);
        }
        std::string sat = sat_brute_force(f) ? "sat" : "unsat";
        for (auto kind : {ReductionKind::Inj, ReductionKind::Anc}) {
            Instance inst = generate(kind, f);
            CheckResult r = kind == ReductionKind::Anc ? solve_anc(inst.tree, inst.pattern)
                                                       : solve_inj(inst.tree, inst.pattern);
            rows.push_back({n, inst.pattern.size(), r.algorithm, std::string(verdict_name(r.verdict)),
                            std::chrono::duration<double, std::milli>(r.stats.elapsed).count(),
                            r.stats.nodes_explored, "formula " + sat});
        }
    }
    return rows;
}

int cmd_bench(const BenchArgs& a) {
    std::vector<BenchRow> rows;
    if (a.suite == "lca-scale")
        rows = bench_lca_scale(a);
    else if (a.suite == "anc-bounded")
        rows = bench_anc_bounded(a);
    else if (a.suite == "reduction-growth")
        rows = bench_reduction_growth(a);
    else
        throw InputError("unknown suite '" + a.suite + "'");

    if (a.json) {
        json out = json::array();
        for (const auto& r : rows)
            out.push_back({{"size", r.size},
                           {"pattern_nodes", r.pattern_nodes},
                           {"algorithm", r.algorithm},
                           {"verdict", r.verdict},
                           {"elapsed_ms", r.ms},
                           {"nodes_explored", r.nodes_explored},
                           {"note", r.note}});
        std::cout << out.dump(2) << '\n';
        return kExitDecided;
    }
    std::printf("%10s %10s %-20s %-8s %12s %14s  %s\n", "size", "pattern", "algorithm", "verdict", "ms",
                "nodes", "note");
    for (const auto& r : rows)
        std::printf("%10zu %10zu %-20s %-8s %12.2f %14llu  %s\n", r.size, r.pattern_nodes, r.algorithm.c_str(),
                    r.verdict.c_str(), r.ms, static_cast<unsigned long long>(r.nodes_explored), r.note.c_str());
    return kExitDecided;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide tree pattern embeddings (std, inj, anc, lca)."};
    app.require_subcommand(1);

    CheckArgs check;
    auto* c = app.add_subcommand("check", "Decide whether a tree embeds a pattern");
    c->add_option("--kind", check.kind, "std, inj, anc or lca")->required()->check(
        CLI::IsMember({"std", "inj", "anc", "lca"}));
    c->add_option("--tree", check.tree, "Tree file, or a directory of them")->required();
    c->add_option("--pattern", check.pattern, "Pattern file, or a directory of them")->required();
    c->add_option("--algorithm", check.algorithm, "auto, oracle, poly or exact")
        ->check(CLI::IsMember({"auto", "oracle", "poly", "exact"}));
    c->add_flag("--witness", check.witness, "Print the embedding");
    c->add_flag("--json", check.json, "Print a JSON report");
    c->add_option("--budget", check.budget, "Search budget (default 10^7, or TREEMBED_BUDGET)");

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "Generate a reduction instance from a DIMACS CNF");
    g->add_option("--reduction", gen.reduction, "inj, anc, inj-h2, inj-wc, inj-nowc or anc-wc")->required();
    g->add_option("--cnf", gen.cnf, "DIMACS CNF file")->required();
    g->add_option("--out-tree", gen.out_tree, "Where to write the tree")->required();
    g->add_option("--out-pattern", gen.out_pattern, "Where to write the pattern")->required();

    SelftestOptions st;
    auto* s = app.add_subcommand("selftest", "Run the exhaustive property suites");
    s->add_option("--max-tree-nodes", st.max_tree_nodes, "Largest enumerated tree")->capture_default_str();
    s->add_option("--max-pattern-nodes", st.max_pattern_nodes, "Largest enumerated pattern")->capture_default_str();
    s->add_option("--seed", st.seed, "Seed for random instances and formulas")->capture_default_str();
    s->add_flag("--as-printed-counting", st.as_printed_counting,
                "Use the min(...) form of the height-one counting inequality and report where it is wrong");

    BenchArgs bench;
    auto* b = app.add_subcommand("bench", "Time the checkers on growing instances");
    b->add_option("--suite", bench.suite, "lca-scale, anc-bounded or reduction-growth")->required();
    b->add_option("--sizes", bench.sizes, "Instance sizes")->delimiter(',');
    b->add_flag("--json", bench.json, "Print JSON rows");
    b->add_option("--seed", bench.seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (c->parsed()) return cmd_check(check);
        if (g->parsed()) return cmd_gen(gen);
        if (s->parsed()) return cmd_selftest(st);
        if (b->parsed()) return cmd_bench(bench);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return kExitError;
}
