// Straightforward serial Φ tables: one cell at a time, subtrees scanned
// linearly, matchings by simple augmenting paths. Slow on purpose; they only
// have to be obviously right.

#include "treembed/poly.hpp"

#include <functional>

namespace treembed::reference {

namespace {

bool any_in(const Bitset& row, NodeId first, NodeId last) {
    for (NodeId x = first; x < last; ++x)
        if (row.test(x)) return true;
    return false;
}

// Kuhn's algorithm on an adjacency matrix.
bool perfect_left_matching(const std::vector<std::vector<char>>& adj, std::size_t right) {
    std::vector<std::size_t> owner(right, SIZE_MAX);
    std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t l, std::vector<char>& seen) {
        for (std::size_t r = 0; r < right; ++r) {
            if (!adj[l][r] || seen[r]) continue;
            seen[r] = 1;
            if (owner[r] == SIZE_MAX || augment(owner[r], seen)) {
                owner[r] = l;
                return true;
            }
        }
        return false;
    };
    for (std::size_t l = 0; l < adj.size(); ++l) {
        std::vector<char> seen(right, 0);
        if (!augment(l, seen)) return false;
    }
    return true;
}

template <class Cell>
PhiTable build(const Tree& t, const Pattern& p, Cell cell) {
    PhiTable phi;
    phi.rows.assign(p.size(), Bitset(t.size()));
    LabelMatcher labels(p, t);
    for (NodeId m = static_cast<NodeId>(p.size()); m-- > 0;)
        for (NodeId n = 0; n < t.size(); ++n)
            if (labels.matches(m, n) && cell(phi, m, n)) phi.rows[m].set(n);
    return phi;
}

} // namespace

PhiTable std_table(const Tree& t, const Pattern& p) {
    return build(t, p, [&](const PhiTable& phi, NodeId m, NodeId n) {
        for (NodeId c : p.children(m)) {
            bool ok = false;
            if (p.edge_kind(c) == EdgeKind::Child) {
                for (NodeId x : t.children(n)) ok = ok || phi[c].test(x);
            } else {
                ok = any_in(phi[c], n + 1, t.subtree_end(n));
            }
            if (!ok) return false;
        }
        return true;
    });
}

PhiTable lca_table(const Tree& t, const Pattern& p) {
    return build(t, p, [&](const PhiTable& phi, NodeId m, NodeId n) {
        auto pk = p.children(m);
        auto tk = t.children(n);
        std::vector<std::vector<char>> adj(pk.size(), std::vector<char>(tk.size(), 0));
        for (std::size_t i = 0; i < pk.size(); ++i)
            for (std::size_t j = 0; j < tk.size(); ++j)
                adj[i][j] = p.edge_kind(pk[i]) == EdgeKind::Child ? phi[pk[i]].test(tk[j])
                                                                  : any_in(phi[pk[i]], tk[j], t.subtree_end(tk[j]));
        return perfect_left_matching(adj, tk.size());
    });
}

PhiTable anc_table(const Tree& t, const Pattern& p) {
    return build(t, p, [&](const PhiTable& phi, NodeId m, NodeId n) {
        auto pk = p.children(m);
        std::vector<std::vector<NodeId>> cand(pk.size());
        for (std::size_t i = 0; i < pk.size(); ++i)
            for (NodeId x = n + 1; x < t.subtree_end(n); ++x)
                if (phi[pk[i]].test(x) && (p.edge_kind(pk[i]) == EdgeKind::Descendant || t.parent(x) == n))
                    cand[i].push_back(x);
        std::vector<NodeId> tuple;
        std::function<bool(std::size_t)> extend = [&](std::size_t i) {
            if (i == pk.size()) return true;
            for (NodeId x : cand[i]) {
                bool clash = false;
                for (NodeId y : tuple) clash = clash || t.is_ancestor(x, y) || t.is_ancestor(y, x);
                if (clash) continue;
                tuple.push_back(x);
                if (extend(i + 1)) return true;
                tuple.pop_back();
            }
            return false;
        };
        return extend(0);
    });
}

} // namespace treembed::reference
