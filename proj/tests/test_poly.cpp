#include "test_util.hpp"
#include "treembed/poly.hpp"
#include "treembed/suites.hpp"

#include <doctest.h>

#include <random>

using namespace treembed;

namespace {

const std::vector<std::string> kTreeLabels{"a", "b", "c"};
const std::vector<std::string> kPatternLabels{"a", "b", "c", "*"};

void check_witness(const Tree& t, const Pattern& p, const CheckResult& r, EmbeddingKind kind) {
    if (!r.yes()) return;
    REQUIRE(r.witness.has_value());
    CHECK(verify(t, p, *r.witness, kind));
}

// Tree t plus one leaf; old nodes keep their Dewey paths.
Tree grow(std::mt19937_64& rng, const Tree& t) {
    StructureBuilder b = t.to_builder();
    std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(b.node_count() - 1));
    b.add_child(pick(rng), kTreeLabels[rng() % kTreeLabels.size()]);
    return Tree(b);
}

} // namespace

TEST_CASE("running example") {
    Pattern p = testutil::example_pattern();
    CHECK(check_std(testutil::example_tree(0), p).yes());
    CHECK_FALSE(check_lca(testutil::example_tree(2), p).yes());
    CHECK(check_lca(testutil::example_tree(3), p).yes());
    CHECK(check_anc_bounded(testutil::example_tree(2), p).yes());
    CHECK_FALSE(check_anc_bounded(testutil::example_tree(1), p).yes());
    for (int i = 0; i < 4; ++i) {
        Tree t = testutil::example_tree(i);
        check_witness(t, p, check_std(t, p), EmbeddingKind::Std);
        check_witness(t, p, check_lca(t, p), EmbeddingKind::Lca);
        check_witness(t, p, check_anc_bounded(t, p), EmbeddingKind::Anc);
    }
}

TEST_CASE("small cases") {
    CHECK_FALSE(check_std(parse_tree("a"), parse_pattern("b")).yes());
    Tree t = parse_tree("x(y(z),w)");
    CHECK(check_lca(t, parse_pattern("*")).yes());
    CHECK(check_std(t, parse_pattern("x//z")).yes());
    CHECK_FALSE(check_std(t, parse_pattern("x/z")).yes());
    CheckResult big = check_lca(parse_tree("a(a)"), parse_pattern("a[a][a]"));
    CHECK_FALSE(big.yes());
}

TEST_CASE("kernels match the serial reference tables") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> tree_size(1, 60);
    std::uniform_int_distribution<std::size_t> pattern_size(1, 7);
    for (int round = 0; round < 400; ++round) {
        Tree t = random_tree(rng, tree_size(rng), kTreeLabels);
        Pattern p = random_bounded_pattern(rng, pattern_size(rng), kPatternLabels, 0.5, 3);
        CHECK(std_table(t, p) == reference::std_table(t, p));
        CHECK(lca_table(t, p) == reference::lca_table(t, p));
        CHECK(anc_table(t, p) == reference::anc_table(t, p));
    }
}

TEST_CASE("kernels match the reference on trees large enough to run in parallel") {
    std::mt19937_64 rng(4);
    for (std::size_t n : {1100, 2500}) {
        Tree t = random_tree(rng, n, kTreeLabels);
        for (int round = 0; round < 3; ++round) {
            Pattern p = sample_pattern(rng, t, 12, 0.5, 0.2);
            Pattern q = random_bounded_pattern(rng, 6, kPatternLabels, 0.5, 2);
            CHECK(std_table(t, p) == reference::std_table(t, p));
            CHECK(lca_table(t, p) == reference::lca_table(t, p));
            CHECK(anc_table(t, q) == reference::anc_table(t, q));
        }
    }
}

TEST_CASE("tables only gain bits when the tree grows") {
    std::mt19937_64 rng(8);
    for (int round = 0; round < 200; ++round) {
        Tree t = random_tree(rng, 1 + rng() % 15, kTreeLabels);
        Tree bigger = grow(rng, t);
        Pattern p = random_bounded_pattern(rng, 1 + rng() % 5, kPatternLabels, 0.5, 3);
        std::vector<NodeId> moved(t.size());
        for (NodeId n = 0; n < t.size(); ++n) moved[n] = node_at(bigger, dewey_of(t, n));
        auto check_table = [&](const PhiTable& small, const PhiTable& large) {
            for (NodeId m = 0; m < p.size(); ++m)
                for (NodeId n = 0; n < t.size(); ++n)
                    if (small[m].test(n)) CHECK(large[m].test(moved[n]));
        };
        check_table(std_table(t, p), std_table(bigger, p));
        check_table(lca_table(t, p), lca_table(bigger, p));
        check_table(anc_table(t, p), anc_table(bigger, p));
    }
}

TEST_CASE("sampled patterns embed") {
    std::mt19937_64 rng(9);
    for (int round = 0; round < 50; ++round) {
        Tree t = random_tree(rng, 200 + rng() % 400, kTreeLabels);
        Pattern lp = sample_pattern(rng, t, 20, 0.5, 0.3);
        CHECK(lp.size() == 20);
        CHECK(check_lca(t, lp).yes());
        std::size_t degree = 2 + rng() % 2;
        Pattern ap = sample_anc_pattern(rng, t, 30, degree, 0.5, 0.3);
        CHECK(ap.size() == 30);
        CHECK(ap.max_degree() <= degree);
        CHECK(check_anc_bounded(t, ap).yes());
        // a chain cannot be longer than the tree is deep
        Pattern chain = sample_anc_pattern(rng, t, t.size(), 1, 0.5, 0.3);
        CHECK(chain.is_path());
        CHECK(chain.size() <= t.height() + 1);
        CHECK(check_anc_bounded(t, chain).yes());
    }
}

TEST_CASE("checkers agree with brute force on small instances") {
    std::vector<Tree> trees = enumerate_trees(5, {"a", "b"});
    std::vector<Pattern> patterns = enumerate_patterns(3, {"a", "b", "*"});
    for (const Tree& t : trees)
        for (const Pattern& p : patterns) {
            CheckResult s = check_std(t, p);
            CheckResult l = check_lca(t, p);
            CheckResult a = check_anc_bounded(t, p);
            CHECK(s.yes() == brute_force(t, p, EmbeddingKind::Std).yes());
            CHECK(l.yes() == brute_force(t, p, EmbeddingKind::Lca).yes());
            CHECK(a.yes() == brute_force(t, p, EmbeddingKind::Anc).yes());
            check_witness(t, p, s, EmbeddingKind::Std);
            check_witness(t, p, l, EmbeddingKind::Lca);
            check_witness(t, p, a, EmbeddingKind::Anc);
        }
}

TEST_CASE("size bound short-circuit") {
    Tree t = parse_tree("a(a)");
    Pattern p = parse_pattern("a[.//a][.//a]");
    CheckResult r = check_lca(t, p);
    CHECK_FALSE(r.yes());
    CHECK(r.algorithm == "check_lca");
    CHECK_FALSE(check_anc_bounded(t, p).yes());
    CHECK(dispatch(t, p, EmbeddingKind::Inj).algorithm == "size_bound");
}

TEST_CASE("anc budget") {
    std::mt19937_64 rng(12);
    Tree t = random_tree(rng, 300, {"a"});
    Pattern p = parse_pattern("a[.//a][.//a][.//a][.//a]");
    CHECK(anc_bounded_cost(t, p) >= 300ull * 300 * 300 * 300);
    CHECK_THROWS_AS(check_anc_bounded(t, p, AncLimits{1}), BudgetExceeded);
    CHECK(check_anc_bounded(t, p).yes());
}

TEST_CASE("height-one counts") {
    Tree t = parse_tree("r(a(b),a,b(b(c)))");
    Pattern p = parse_pattern("r[a][.//b][*][.//*]");
    HeightOneCounts c = count_height_one(t, p);
    REQUIRE(c.labels.size() >= 4);
    CHECK(c.roots_compatible);
    CHECK(c.p_child_wild == 1);
    CHECK(c.p_desc_wild == 1);
    std::int64_t depth1 = 0;
    for (std::size_t i = 0; i < c.labels.size(); ++i) {
        CHECK(c.t_depth_ge1[i] == c.t_depth1[i] + c.t_depth_ge2[i]);
        depth1 += c.t_depth1[i];
        if (c.labels[i] == "b") {
            CHECK(c.t_depth1[i] == 1);
            CHECK(c.t_depth_ge2[i] == 2);
            CHECK(c.p_desc[i] == 1);
        }
    }
    CHECK(depth1 == static_cast<std::int64_t>(t.degree(0)));
}

TEST_CASE("height-one deciders") {
    CHECK_FALSE(check_inj_height1(parse_tree("r(a)"), parse_pattern("r[a][a]")).yes());
    CHECK(check_inj_height1(parse_tree("r(a(a))"), parse_pattern("r[.//a][.//a]")).yes());
    CHECK_FALSE(check_inj_height1(parse_tree("r(a(a))"), parse_pattern("r[a][.//b]")).yes());
    CHECK_THROWS_AS(check_inj_height1(parse_tree("r(a(a))"), parse_pattern("r/a/a")), Error);

    // Two child-edge wildcards, one depth-1 node: the min form accepts.
    Tree t = parse_tree("r(a(a))");
    Pattern p = parse_pattern("r[*][*]");
    HeightOneCounts c = count_height_one(t, p);
    CHECK_FALSE(height_one_counting(c, CountingReading::Corrected));
    CHECK(height_one_counting(c, CountingReading::AsPrinted));
    CHECK_FALSE(height_one_matching(t, p));
    CHECK_FALSE(brute_force(t, p, EmbeddingKind::Inj).yes());
}

TEST_CASE("height-one counting, matching and brute force agree") {
    std::vector<Tree> trees = enumerate_trees(5, {"a", "b"});
    std::vector<Pattern> patterns = enumerate_height_one_patterns(3, {"a", "b", "*"});
    for (const Tree& t : trees)
        for (const Pattern& p : patterns) {
            bool truth = brute_force(t, p, EmbeddingKind::Inj).yes();
            Embedding h;
            CHECK(height_one_counting(count_height_one(t, p)) == truth);
            CHECK(height_one_matching(t, p, &h) == truth);
            if (truth) CHECK(verify(t, p, h, EmbeddingKind::Inj));
        }
}

TEST_CASE("dispatch routing") {
    Pattern example = testutil::example_pattern();
    Tree t3 = testutil::example_tree(3);
    CHECK(dispatch(t3, example, EmbeddingKind::Std).algorithm == "check_std");
    CHECK(dispatch(t3, parse_pattern("a//b/c"), EmbeddingKind::Lca).algorithm == "check_std");
    CHECK(dispatch(t3, parse_pattern("f/a[b]/g"), EmbeddingKind::Inj).algorithm == "check_lca");
    CHECK(dispatch(t3, example, EmbeddingKind::Lca).algorithm == "check_lca");
    CHECK(dispatch(t3, example, EmbeddingKind::Anc).algorithm == "check_anc_bounded");
    CHECK(dispatch(t3, example, EmbeddingKind::Inj).algorithm == "solve_inj");
    CHECK(dispatch(parse_tree("r(a,a)"), parse_pattern("r[.//a][.//a]"), EmbeddingKind::Inj).algorithm ==
          "check_inj_height1");

    Tree anc_tree = parse_tree(testutil::golden("sample_anc.tree"));
    Pattern anc_pattern = parse_pattern(testutil::golden("sample_anc.pat"));
    CHECK(anc_bounded_cost(anc_tree, anc_pattern) > 10'000'000);
    CheckResult r = dispatch(anc_tree, anc_pattern, EmbeddingKind::Anc);
    CHECK(r.algorithm == "solve_anc");
    CHECK(r.yes());
    check_witness(anc_tree, anc_pattern, r, EmbeddingKind::Anc);
}

TEST_CASE("dispatch agrees with brute force") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 1500; ++round) {
        Tree t = random_tree(rng, 1 + rng() % 9, {"a", "b"});
        Pattern p = random_pattern(rng, 1 + rng() % 5, {"a", "b", "*"}, 0.5);
        for (EmbeddingKind kind : kAllKinds) {
            CheckResult r = dispatch(t, p, kind);
            CHECK(r.yes() == brute_force(t, p, kind).yes());
            check_witness(t, p, r, kind);
        }
    }
}
