#include "test_util.hpp"
#include "treembed/suites.hpp"
#include "treembed/tree.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace treembed;

namespace {

Errc pattern_error(const StructureBuilder& b) {
    try {
        Pattern p(b);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("pattern accepted");
    return Errc::InvalidNode;
}

Errc tree_error(const StructureBuilder& b) {
    try {
        Tree t(b);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("tree accepted");
    return Errc::InvalidNode;
}

// lca by walking root paths, independent of the interval representation.
NodeId walk_lca(const Structure& s, NodeId a, NodeId b) {
    std::vector<NodeId> pa;
    for (std::optional<NodeId> v = a; v; v = s.parent(*v)) pa.push_back(*v);
    for (std::optional<NodeId> v = b; v; v = s.parent(*v))
        if (std::find(pa.begin(), pa.end(), *v) != pa.end()) return *v;
    return kNoNode;
}

} // namespace

TEST_CASE("running example pattern validates") {
    Pattern p = testutil::example_pattern();
    CHECK(p.size() == 5);
    CHECK(p.height() == 3);
    CHECK(p.has_descendant_edges());
    CHECK_FALSE(p.has_wildcards());
    CHECK(p.label_name(0) == "f");
    CHECK(p.degree(1) == 2);
    CHECK(p.max_degree() == 2);
}

TEST_CASE("single node tree") {
    StructureBuilder b;
    b.add_node("a");
    Tree t(b);
    CHECK(t.size() == 1);
    CHECK(t.height() == 0);
    CHECK_FALSE(t.parent(0).has_value());
    CHECK(t.lca(0, 0) == 0);
    CHECK(t.is_path());
}

TEST_CASE("validation errors") {
    SUBCASE("empty") {
        StructureBuilder b;
        CHECK(pattern_error(b) == Errc::EmptyStructure);
    }
    SUBCASE("edge both child and descendant") {
        StructureBuilder b;
        NodeId r = b.add_node("a");
        NodeId c = b.add_node("b");
        b.add_edge(r, c, EdgeKind::Child);
        b.add_edge(r, c, EdgeKind::Descendant);
        CHECK(pattern_error(b) == Errc::DisjointnessViolation);
    }
    SUBCASE("two parents") {
        StructureBuilder b;
        NodeId r = b.add_node("a");
        NodeId x = b.add_child(r, "b");
        NodeId y = b.add_child(r, "c");
        b.add_edge(y, x);
        CHECK(pattern_error(b) == Errc::MultipleParents);
    }
    SUBCASE("self loop") {
        StructureBuilder b;
        NodeId r = b.add_node("a");
        NodeId x = b.add_child(r, "b");
        b.add_edge(x, x);
        CHECK(pattern_error(b) == Errc::CycleDetected);
    }
    SUBCASE("cycle away from the root") {
        StructureBuilder b;
        b.add_node("a");
        NodeId x = b.add_node("b");
        NodeId y = b.add_node("c");
        b.add_edge(x, y);
        b.add_edge(y, x);
        CHECK(pattern_error(b) == Errc::CycleDetected);
    }
    SUBCASE("unattached node") {
        StructureBuilder b;
        b.add_node("a");
        b.add_node("b");
        CHECK(pattern_error(b) == Errc::MissingParent);
    }
    SUBCASE("wildcard in tree") {
        StructureBuilder b;
        NodeId r = b.add_node("a");
        b.add_child(r, "*");
        CHECK(tree_error(b) == Errc::WildcardInTree);
        CHECK_NOTHROW(Pattern{b});
    }
    SUBCASE("descendant edge in tree") {
        StructureBuilder b;
        NodeId r = b.add_node("a");
        b.add_child(r, "b", EdgeKind::Descendant);
        CHECK(tree_error(b) == Errc::DescEdgeInTree);
    }
    SUBCASE("bad label") {
        StructureBuilder b;
        b.add_node("a b");
        CHECK(pattern_error(b) == Errc::InvalidLabel);
    }
    SUBCASE("out of range query") {
        Pattern p = testutil::example_pattern();
        CHECK_THROWS_AS(p.label(17), Error);
    }
}

TEST_CASE("preorder numbering") {
    StructureBuilder b;
    NodeId r = b.add_node("r");
    NodeId x = b.add_child(r, "x");
    NodeId y = b.add_child(r, "y");
    b.add_child(x, "u");
    b.add_child(y, "v");
    b.set_root(r);
    Tree t(b);
    std::vector<std::string> names;
    for (NodeId n = 0; n < t.size(); ++n) names.emplace_back(t.label_name(n));
    CHECK(names == std::vector<std::string>{"r", "x", "u", "y", "v"});
    CHECK(t.subtree_end(1) == 3);
    CHECK(t.child_index(3) == 1);
}

TEST_CASE("lca and ancestry in t2") {
    Tree t = testutil::example_tree(2); // f(a(g(b,b(c))))
    // preorder: f0 a1 g2 b3 b4 c5
    CHECK(t.label_name(2) == "g");
    CHECK(t.lca(3, 5) == 2);
    CHECK(t.lca(4, 5) == 4);
    CHECK(t.lca(0, 5) == 0);
    CHECK(t.is_ancestor(1, 5));
    CHECK(t.is_ancestor(5, 5));
    CHECK_FALSE(t.is_ancestor(3, 4));
    CHECK_FALSE(t.is_ancestor(5, 1));
}

TEST_CASE("structural properties on random trees") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 20; ++round) {
        Tree t = random_tree(rng, 60, {"a", "b", "c"});
        for (NodeId n = 1; n < t.size(); ++n) {
            NodeId par = *t.parent(n);
            CHECK(t.depth(n) == t.depth(par) + 1);
            CHECK(t.is_ancestor(par, n));
            CHECK(t.subtree_height(par) >= t.subtree_height(n) + 1);
        }
        std::size_t children = 0;
        for (NodeId n = 0; n < t.size(); ++n) children += t.degree(n);
        CHECK(children == t.size() - 1);
        for (NodeId a = 0; a < t.size(); a += 3)
            for (NodeId b = 0; b < t.size(); b += 2) {
                NodeId l = t.lca(a, b);
                CHECK(l == walk_lca(t, a, b));
                CHECK(l == t.lca(b, a));
                CHECK(t.is_ancestor(l, a));
                CHECK(t.is_ancestor(l, b));
            }
    }
}

TEST_CASE("canonical form ignores sibling order") {
    StructureBuilder b1;
    NodeId r = b1.add_node("r");
    b1.add_child(r, "x");
    b1.add_child(b1.add_child(r, "y"), "z");
    StructureBuilder b2;
    r = b2.add_node("r");
    b2.add_child(b2.add_child(r, "y"), "z");
    b2.add_child(r, "x");
    CHECK(isomorphic(Tree(b1), Tree(b2)));

    StructureBuilder b3;
    r = b3.add_node("r");
    b3.add_child(b3.add_child(r, "y"), "z", EdgeKind::Descendant);
    b3.add_child(r, "x");
    CHECK_FALSE(isomorphic(Pattern(b2), Pattern(b3)));
}

TEST_CASE("builder round trip") {
    Pattern p = testutil::example_pattern();
    Pattern q(p.to_builder());
    CHECK(isomorphic(p, q));
    CHECK(Pattern(testutil::example_tree(1)).size() == 5);
}

TEST_CASE("label matcher") {
    Tree t = testutil::example_tree(0);
    Pattern p = parse_pattern("f[*]//zz");
    LabelMatcher m(p, t);
    CHECK(m.matches(0, 0));
    CHECK_FALSE(m.matches(0, 1));
    for (NodeId n = 0; n < t.size(); ++n) CHECK(m.matches(1, n));
    for (NodeId n = 0; n < t.size(); ++n) CHECK_FALSE(m.matches(2, n));
}
