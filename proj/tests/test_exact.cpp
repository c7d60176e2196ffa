#include "test_util.hpp"
#include "treembed/exact.hpp"
#include "treembed/reductions.hpp"
#include "treembed/suites.hpp"

#include <doctest.h>

#include <random>

using namespace treembed;

namespace {

using Solver = CheckResult (*)(const Tree&, const Pattern&, const SearchConfig&);

struct Case {
    Solver solve;
    EmbeddingKind kind;
};

const Case kCases[] = {{solve_inj, EmbeddingKind::Inj}, {solve_anc, EmbeddingKind::Anc}};

SearchConfig without(bool Pruning::*rule) {
    SearchConfig cfg;
    cfg.pruning.*rule = false;
    return cfg;
}

} // namespace

TEST_CASE("running example") {
    Pattern p = testutil::example_pattern();
    CHECK(solve_inj(testutil::example_tree(1), p).yes());
    CHECK_FALSE(solve_inj(testutil::example_tree(0), p).yes());
    CHECK(solve_anc(testutil::example_tree(2), p).yes());
    CHECK_FALSE(solve_anc(testutil::example_tree(1), p).yes());
    CheckResult r = solve_anc(testutil::example_tree(3), p);
    REQUIRE(r.yes());
    CHECK(r.algorithm == "solve_anc");
    CHECK(verify(testutil::example_tree(3), p, *r.witness, EmbeddingKind::Anc));
    CHECK(r.stats.nodes_explored > 0);
}

TEST_CASE("complete on all small instances") {
    std::vector<Tree> trees = enumerate_trees(5, {"a", "b"});
    std::vector<Pattern> patterns = enumerate_patterns(4, {"a", "b", "*"});
    std::size_t yes = 0;
    for (const Tree& t : trees)
        for (const Pattern& p : patterns)
            for (const Case& c : kCases) {
                CheckResult r = c.solve(t, p, SearchConfig{});
                CheckResult truth = brute_force(t, p, c.kind);
                REQUIRE(r.verdict != Verdict::Unknown);
                CHECK(r.yes() == truth.yes());
                if (r.yes()) {
                    ++yes;
                    CHECK(verify(t, p, *r.witness, c.kind));
                }
            }
    CHECK(yes > 0);
}

TEST_CASE("preorder search returns the brute-force witness") {
    // Both enumerate pattern nodes in preorder and tree nodes ascending, so
    // the first witness is the same lexicographically least mapping.
    SearchConfig cfg;
    cfg.order = ChildOrder::Preorder;
    std::mt19937_64 rng(31);
    for (int round = 0; round < 1500; ++round) {
        Tree t = random_tree(rng, 1 + rng() % 10, {"a", "b"});
        Pattern p = random_pattern(rng, 1 + rng() % 5, {"a", "b", "*"}, 0.6);
        for (const Case& c : kCases) {
            CheckResult r = c.solve(t, p, cfg);
            CheckResult truth = brute_force(t, p, c.kind);
            REQUIRE(r.yes() == truth.yes());
            if (r.yes()) CHECK(*r.witness == *truth.witness);
        }
    }
}

TEST_CASE("pruning rules never change a verdict") {
    const std::pair<const char*, bool Pruning::*> rules[] = {
        {"size", &Pruning::size},
        {"height", &Pruning::height},
        {"degree", &Pruning::degree},
        {"ancestor_chain", &Pruning::ancestor_chain},
        {"symmetry", &Pruning::symmetry},
    };
    SearchConfig none;
    none.pruning = Pruning{false, false, false, false, false};
    std::mt19937_64 rng(17);
    for (int round = 0; round < 600; ++round) {
        Tree t = random_tree(rng, 1 + rng() % 14, {"a", "b"});
        Pattern p = random_pattern(rng, 1 + rng() % 6, {"a", "b", "*"}, 0.6);
        for (const Case& c : kCases) {
            CheckResult full = c.solve(t, p, SearchConfig{});
            CheckResult bare = c.solve(t, p, none);
            CHECK(full.verdict == bare.verdict);
            CHECK(full.stats.nodes_explored <= bare.stats.nodes_explored);
            for (const auto& [name, rule] : rules) {
                CAPTURE(name);
                CheckResult r = c.solve(t, p, without(rule));
                CHECK(r.verdict == full.verdict);
                if (r.yes()) CHECK(verify(t, p, *r.witness, c.kind));
            }
        }
    }
}

TEST_CASE("deterministic") {
    Instance inst = gen_inj_reduction(sample_formula());
    CheckResult a = solve_inj(inst.tree, inst.pattern);
    CheckResult b = solve_inj(inst.tree, inst.pattern);
    REQUIRE(a.yes());
    CHECK(*a.witness == *b.witness);
    CHECK(a.stats.nodes_explored == b.stats.nodes_explored);
}

TEST_CASE("budget") {
    Instance inst = gen_inj_reduction(sample_formula());
    SearchConfig cfg;
    cfg.node_budget = 1;
    CheckResult r = solve_inj(inst.tree, inst.pattern, cfg);
    CHECK(r.verdict == Verdict::Unknown);
    CHECK_FALSE(r.witness.has_value());
    cfg.node_budget = 0;
    try {
        solve_anc(inst.tree, inst.pattern, cfg);
        FAIL("expected InvalidSize");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidSize);
    }
}

TEST_CASE("witness search can be switched off") {
    SearchConfig cfg;
    cfg.find_witness = false;
    CheckResult r = solve_inj(testutil::example_tree(1), testutil::example_pattern(), cfg);
    CHECK(r.yes());
}

TEST_CASE("pigeonhole") {
    CheckResult r = solve_inj(parse_tree("a(a)"), parse_pattern("a[.//*][.//*]"));
    CHECK_FALSE(r.yes());
    CHECK(r.verdict == Verdict::No);
}
