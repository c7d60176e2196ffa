#include "treembed/matching.hpp"

#include <algorithm>
#include <cassert>
#include <limits>

namespace treembed {

namespace {
constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Matching::edges() const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
    for (std::uint32_t l = 0; l < left_to_right.size(); ++l)
        if (left_to_right[l] != kUnmatched) out.emplace_back(l, left_to_right[l]);
    return out;
}

void HopcroftKarp::solve(const BipartiteGraph& g, Matching& out) {
    const std::uint32_t nl = g.left_count();
    out.left_to_right.assign(nl, kUnmatched);
    out.size = 0;
    right_to_left_.assign(g.right_count(), kUnmatched);
    dist_.assign(nl, kInf);
    iter_.assign(nl, 0);

    // Greedy warm start; most graphs from the Φ kernels are solved here.
    for (std::uint32_t l = 0; l < nl; ++l)
        for (std::uint32_t r : g.neighbors(l))
            if (right_to_left_[r] == kUnmatched) {
                right_to_left_[r] = l;
                out.left_to_right[l] = r;
                ++out.size;
                break;
            }

    while (out.size < nl && bfs(g, out)) {
        std::fill(iter_.begin(), iter_.end(), 0);
        for (std::uint32_t l = 0; l < nl; ++l)
            if (out.left_to_right[l] == kUnmatched && dfs(g, out, l)) ++out.size;
    }
    assert(is_valid_matching(g, out) && !has_augmenting_path(g, out));
}

bool HopcroftKarp::bfs(const BipartiteGraph& g, const Matching& m) {
    queue_.clear();
    for (std::uint32_t l = 0; l < g.left_count(); ++l) {
        if (m.left_to_right[l] == kUnmatched) {
            dist_[l] = 0;
            queue_.push_back(l);
        } else {
            dist_[l] = kInf;
        }
    }
    bool found = false;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
        std::uint32_t l = queue_[head];
        for (std::uint32_t r : g.neighbors(l)) {
            std::uint32_t next = right_to_left_[r];
            if (next == kUnmatched) {
                found = true;
            } else if (dist_[next] == kInf) {
                dist_[next] = dist_[l] + 1;
                queue_.push_back(next);
            }
        }
    }
    return found;
}

bool HopcroftKarp::dfs(const BipartiteGraph& g, Matching& m, std::uint32_t l) {
    const auto& nb = g.neighbors(l);
    for (; iter_[l] < nb.size(); ++iter_[l]) {
        std::uint32_t r = nb[iter_[l]];
        std::uint32_t next = right_to_left_[r];
        if (next == kUnmatched || (dist_[next] == dist_[l] + 1 && dfs(g, m, next))) {
            m.left_to_right[l] = r;
            right_to_left_[r] = l;
            ++iter_[l];
            return true;
        }
    }
    dist_[l] = kInf;
    return false;
}

Matching max_bipartite_matching(const BipartiteGraph& g) {
    HopcroftKarp hk;
    Matching m;
    hk.solve(g, m);
    return m;
}

bool is_valid_matching(const BipartiteGraph& g, const Matching& m) {
    if (m.left_to_right.size() != g.left_count()) return false;
    std::vector<char> taken(g.right_count(), 0);
    std::uint32_t count = 0;
    for (std::uint32_t l = 0; l < g.left_count(); ++l) {
        std::uint32_t r = m.left_to_right[l];
        if (r == kUnmatched) continue;
        if (r >= g.right_count() || taken[r]) return false;
        const auto& nb = g.neighbors(l);
        if (std::find(nb.begin(), nb.end(), r) == nb.end()) return false;
        taken[r] = 1;
        ++count;
    }
    return count == m.size;
}

bool has_augmenting_path(const BipartiteGraph& g, const Matching& m) {
    std::vector<std::uint32_t> right_to_left(g.right_count(), kUnmatched);
    for (std::uint32_t l = 0; l < g.left_count(); ++l)
        if (m.left_to_right[l] != kUnmatched) right_to_left[m.left_to_right[l]] = l;
    // Alternating BFS from every free left vertex.
    std::vector<char> seen_left(g.left_count(), 0);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t l = 0; l < g.left_count(); ++l)
        if (m.left_to_right[l] == kUnmatched) {
            seen_left[l] = 1;
            queue.push_back(l);
        }
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (std::uint32_t r : g.neighbors(queue[head])) {
            std::uint32_t next = right_to_left[r];
            if (next == kUnmatched) return true;
            if (!seen_left[next]) {
                seen_left[next] = 1;
                queue.push_back(next);
            }
        }
    }
    return false;
}

} // namespace treembed
