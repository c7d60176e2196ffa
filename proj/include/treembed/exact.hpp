#pragma once

// Complete backtracking deciders for weakly-injective and ancestor-preserving
// embeddings. Pattern nodes are assigned in a preorder whose sibling order is
// configurable; tree candidates are tried in ascending id (Dewey) order, so
// the first witness found is the lexicographically least one for that
// assignment order.

#include "treembed/embedding.hpp"

#include <cstdint>

namespace treembed {

enum class ChildOrder : std::uint8_t {
    LargestSubtreeFirst,
    Preorder,
};

/// Every rule is a pure accelerator; switching one off never changes a verdict.
struct Pruning {
    /// subtree_size(p|m) must fit into the unused nodes of t|n.
    bool size = true;
    /// height(p|m) <= height(t|n).
    bool height = true;
    /// m's child-edge children need distinct children of n.
    bool degree = true;
    /// anc only: nodes between h(parent(m')) and h(m') and the subtrees below
    /// images of unrelated pattern nodes are skipped without a full check.
    bool ancestor_chain = true;
    /// Isomorphic sibling subpatterns behind the same edge kind get images in
    /// increasing id order.
    bool symmetry = true;
};

struct SearchConfig {
    /// Admitted partial assignments before giving up with Verdict::Unknown.
    std::uint64_t node_budget = 10'000'000;
    ChildOrder order = ChildOrder::LargestSubtreeFirst;
    bool find_witness = true;
    Pruning pruning;
};

/// Throws Error(InvalidSize) when cfg.node_budget is 0.
CheckResult solve_inj(const Tree& t, const Pattern& p, const SearchConfig& cfg = {});
CheckResult solve_anc(const Tree& t, const Pattern& p, const SearchConfig& cfg = {});

} // namespace treembed
