#include "test_util.hpp"
#include "treembed/embedding.hpp"
#include "treembed/suites.hpp"
#include "treembed/text_io.hpp"

#include <doctest.h>

#include <random>

using namespace treembed;

namespace {

std::size_t syntax_position(auto&& parse, std::string_view text) {
    try {
        parse(text);
    } catch (const SyntaxError& e) {
        return e.position();
    }
    FAIL("parse succeeded on '" << text << "'");
    return 0;
}

} // namespace

TEST_CASE("running example parses") {
    Tree t1 = testutil::example_tree(1);
    CHECK(t1.size() == 5);
    CHECK(t1.height() == 4);
    Pattern p = testutil::example_pattern();
    std::size_t desc = 0;
    for (NodeId m = 1; m < p.size(); ++m) desc += p.edge_kind(m) == EdgeKind::Descendant;
    CHECK(desc == 2);
    CHECK(render_pattern(p) == "f/a[.//b/c]//b");
}

TEST_CASE("pattern edge syntax") {
    Pattern p = parse_pattern("r[x][./y][.//z]/u//v");
    CHECK(p.size() == 6);
    CHECK(p.degree(0) == 4);
    std::size_t desc = 0;
    for (NodeId m = 1; m < p.size(); ++m) desc += p.edge_kind(m) == EdgeKind::Descendant;
    CHECK(desc == 2);
    CHECK(isomorphic(p, parse_pattern("r/u//v[.//z][y][x]") ) == false);
    CHECK(isomorphic(p, parse_pattern(" r [ .//z ] [x] [y] / u // v ")));
}

TEST_CASE("whitespace is ignored") {
    CHECK(isomorphic(parse_tree(" f ( a , b ( c ) ) "), parse_tree("f(a,b(c))")));
}

TEST_CASE("syntax errors carry a position") {
    auto tree = [](std::string_view s) { return parse_tree(s); };
    auto pattern = [](std::string_view s) { return parse_pattern(s); };
    CHECK(syntax_position(tree, "f(a") == 3);
    CHECK(syntax_position(tree, "f(a,)") == 4);
    CHECK(syntax_position(tree, "") == 0);
    CHECK(syntax_position(tree, "f(a)x") == 4);
    CHECK(syntax_position(pattern, "a[b") == 3);
    CHECK(syntax_position(pattern, "a///b") >= 1);
    CHECK_THROWS_AS(parse_tree("f(*)"), Error);
}

TEST_CASE("dewey paths") {
    Tree t = testutil::example_tree(2); // f(a(g(b,b(c))))
    CHECK(format_dewey(dewey_of(t, 0)) == "\xCE\xB5");
    CHECK(format_dewey(dewey_of(t, 5)) == "0.0.1.0");
    CHECK(node_at(t, parse_dewey("0.0.1.0")) == 5);
    CHECK(parse_dewey("\xCE\xB5").empty());
    for (NodeId n = 0; n < t.size(); ++n) CHECK(node_at(t, parse_dewey(format_dewey(dewey_of(t, n)))) == n);
    try {
        node_at(t, parse_dewey("0.3"));
        FAIL("expected InvalidPath");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InvalidPath);
    }
    CHECK_THROWS_AS(parse_dewey("0..1"), SyntaxError);
}

TEST_CASE("dimacs") {
    CnfFormula f = parse_dimacs(testutil::golden("sample.cnf"));
    CHECK(f.num_vars == 3);
    CHECK(f.clauses == std::vector<std::vector<int>>{{1, -3}, {1, -2, 3}, {-1, -2}});
    CnfFormula g = parse_dimacs(render_dimacs(f));
    CHECK(g.num_vars == f.num_vars);
    CHECK(g.clauses == f.clauses);
    // clauses may span lines
    CHECK(parse_dimacs("p cnf 2 1\n1\n-2 0\n").clauses == std::vector<std::vector<int>>{{1, -2}});

    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n0\n"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), SyntaxError);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2\n"), SyntaxError);
    CHECK(parse_dimacs(testutil::golden("empty.cnf")).clauses.empty());
}

TEST_CASE("witness text round trip") {
    Tree t = testutil::example_tree(3);
    Pattern p = testutil::example_pattern();
    CheckResult r = brute_force(t, p, EmbeddingKind::Lca);
    REQUIRE(r.yes());
    std::string text = format_witness(t, p, *r.witness);
    CHECK(text.find("\xCE\xB5 -> \xCE\xB5\n") == 0);
    CHECK(parse_witness(t, p, text) == *r.witness);
    CHECK_THROWS_AS(parse_witness(t, p, "0 => 0\n"), SyntaxError);
}

TEST_CASE("random round trips") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> size(1, 40);
    for (int i = 0; i < 1000; ++i) {
        Tree t = random_tree(rng, size(rng), {"a", "b", "c1", "x_2"});
        Tree t2 = parse_tree(render_tree(t));
        CHECK(isomorphic(t, t2));
        CHECK(render_tree(t2) == render_tree(t));

        Pattern p = random_pattern(rng, size(rng), {"a", "b", "*", "long_label"}, 0.4);
        Pattern p2 = parse_pattern(render_pattern(p));
        CHECK(isomorphic(p, p2));
        CHECK(render_pattern(p2) == render_pattern(p));
    }
}

TEST_CASE("fuzzed input never crashes the parsers") {
    std::mt19937_64 rng(5);
    const std::string alphabet = "ab*()[],/. _\n0-p cnf\xCE\xB5";
    std::uniform_int_distribution<std::size_t> len(0, 24);
    std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
    std::uniform_int_distribution<int> byte(0, 255);
    std::size_t accepted = 0;
    for (int i = 0; i < 20000; ++i) {
        std::string s;
        std::size_t n = len(rng);
        for (std::size_t k = 0; k < n; ++k)
            s += i % 4 == 0 ? static_cast<char>(byte(rng)) : alphabet[pick(rng)];
        for (int which = 0; which < 4; ++which) {
            try {
                switch (which) {
                case 0: parse_tree(s); break;
                case 1: parse_pattern(s); break;
                case 2: parse_dimacs(s); break;
                default: parse_dewey(s); break;
                }
                ++accepted;
            } catch (const Error&) {
            }
        }
    }
    CHECK(accepted > 0);
}
