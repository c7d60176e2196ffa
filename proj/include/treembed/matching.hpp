#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace treembed {

/// Left vertices 0..left_count-1, right vertices 0..right_count-1. Reusable:
/// reset() keeps the adjacency capacity.
class BipartiteGraph {
public:
    BipartiteGraph() = default;
    BipartiteGraph(std::uint32_t left, std::uint32_t right) { reset(left, right); }

    void reset(std::uint32_t left, std::uint32_t right) {
        right_ = right;
        if (adj_.size() < left) adj_.resize(left);
        for (std::uint32_t i = 0; i < left; ++i) adj_[i].clear();
        left_ = left;
    }
    void add_edge(std::uint32_t l, std::uint32_t r) { adj_[l].push_back(r); }

    std::uint32_t left_count() const noexcept { return left_; }
    std::uint32_t right_count() const noexcept { return right_; }
    const std::vector<std::uint32_t>& neighbors(std::uint32_t l) const { return adj_[l]; }

private:
    std::uint32_t left_ = 0;
    std::uint32_t right_ = 0;
    std::vector<std::vector<std::uint32_t>> adj_;
};

inline constexpr std::uint32_t kUnmatched = static_cast<std::uint32_t>(-1);

struct Matching {
    /// Right partner of each left vertex, or kUnmatched.
    std::vector<std::uint32_t> left_to_right;
    std::uint32_t size = 0;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges() const;
};

/// Hopcroft-Karp with buffers kept between calls. The Φ-table kernels create
/// one per thread.
class HopcroftKarp {
public:
    /// Maximum matching of g written into out.
    void solve(const BipartiteGraph& g, Matching& out);

private:
    bool bfs(const BipartiteGraph& g, const Matching& m);
    bool dfs(const BipartiteGraph& g, Matching& m, std::uint32_t l);

    std::vector<std::uint32_t> right_to_left_;
    std::vector<std::uint32_t> dist_;
    std::vector<std::uint32_t> queue_;
    std::vector<std::uint32_t> iter_;
};

Matching max_bipartite_matching(const BipartiteGraph& g);

/// Edges disjoint and present in g.
bool is_valid_matching(const BipartiteGraph& g, const Matching& m);
/// Certificate of maximality: no alternating path joins two free vertices.
bool has_augmenting_path(const BipartiteGraph& g, const Matching& m);

} // namespace treembed
