#include "treembed/matching.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace treembed;

namespace {

// Exponential oracle: best matching size by trying every right partner for
// each left vertex in turn.
std::uint32_t best_matching(const BipartiteGraph& g, std::uint32_t l, std::uint32_t used) {
    if (l == g.left_count()) return 0;
    std::uint32_t best = best_matching(g, l + 1, used);
    for (std::uint32_t r : g.neighbors(l))
        if (!(used >> r & 1)) best = std::max(best, 1 + best_matching(g, l + 1, used | 1u << r));
    return best;
}

} // namespace

TEST_CASE("complete bipartite graph") {
    BipartiteGraph g(3, 3);
    for (std::uint32_t l = 0; l < 3; ++l)
        for (std::uint32_t r = 0; r < 3; ++r) g.add_edge(l, r);
    Matching m = max_bipartite_matching(g);
    CHECK(m.size == 3);
    CHECK(is_valid_matching(g, m));
}

TEST_CASE("shared single neighbour") {
    BipartiteGraph g(3, 2);
    for (std::uint32_t l = 0; l < 3; ++l) g.add_edge(l, 1);
    Matching m = max_bipartite_matching(g);
    CHECK(m.size == 1);
    CHECK(m.edges().size() == 1);
}

TEST_CASE("needs an augmenting path") {
    // greedy 0-0 blocks 1, whose only neighbour is 0
    BipartiteGraph g(2, 2);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    g.add_edge(1, 0);
    Matching m = max_bipartite_matching(g);
    CHECK(m.size == 2);
    CHECK(m.left_to_right[1] == 0);
}

TEST_CASE("empty sides") {
    BipartiteGraph g(0, 4);
    CHECK(max_bipartite_matching(g).size == 0);
    BipartiteGraph h(3, 0);
    Matching m = max_bipartite_matching(h);
    CHECK(m.size == 0);
    CHECK(std::all_of(m.left_to_right.begin(), m.left_to_right.end(), [](auto r) { return r == kUnmatched; }));
}

TEST_CASE("invalid matchings are detected") {
    BipartiteGraph g(2, 2);
    g.add_edge(0, 0);
    g.add_edge(1, 0);
    Matching twice{{0, 0}, 2};
    CHECK_FALSE(is_valid_matching(g, twice));
    Matching absent{{1, kUnmatched}, 1};
    CHECK_FALSE(is_valid_matching(g, absent));
    Matching partial{{kUnmatched, kUnmatched}, 0};
    CHECK(is_valid_matching(g, partial));
    CHECK(has_augmenting_path(g, partial));
}

TEST_CASE("random graphs against the exponential oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::uint32_t> side(0, 10);
    std::uniform_real_distribution<double> density(0.05, 0.7);
    HopcroftKarp hk;
    BipartiteGraph g;
    Matching m;
    for (int round = 0; round < 2000; ++round) {
        std::uint32_t left = side(rng), right = side(rng);
        g.reset(left, right);
        std::bernoulli_distribution edge(density(rng));
        for (std::uint32_t l = 0; l < left; ++l)
            for (std::uint32_t r = 0; r < right; ++r)
                if (edge(rng)) g.add_edge(l, r);
        hk.solve(g, m);
        CHECK(is_valid_matching(g, m));
        CHECK_FALSE(has_augmenting_path(g, m));
        CHECK(m.size == best_matching(g, 0, 0));
        CHECK(m.size == max_bipartite_matching(g).size);
    }
}
