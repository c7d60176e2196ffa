#include "treembed/exact.hpp"

#include <algorithm>

namespace treembed {

namespace {

using Clock = std::chrono::steady_clock;

// Counts used tree nodes over preorder ranges.
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i, int delta) {
        for (++i; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
    }
    /// Sum over [0, i).
    int prefix(std::size_t i) const {
        int s = 0;
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }
    int range(std::size_t first, std::size_t last) const { return prefix(last) - prefix(first); }

private:
    std::vector<int> tree_;
};

class Search {
public:
    Search(const Tree& t, const Pattern& p, const SearchConfig& cfg, bool anc)
        : t_(t), p_(p), cfg_(cfg), anc_(anc), labels_(p, t), h_(p.size(), kNoNode),
          owner_(t.size(), kNoNode), used_(t.size()), blocked_(t.size(), 0), sym_prev_(p.size(), kNoNode),
          child_edges_(p.size(), 0) {
        build_order();
        for (NodeId m = 1; m < p.size(); ++m)
            if (p.edge_kind(m) == EdgeKind::Child) ++child_edges_[*p.parent(m)];
    }

    Verdict run() {
        if (assign(0)) return Verdict::Yes;
        return exhausted_ ? Verdict::Unknown : Verdict::No;
    }
    const std::vector<NodeId>& mapping() const { return h_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    void build_order() {
        std::vector<std::string> forms;
        if (cfg_.pruning.symmetry) forms = p_.canonical_forms();
        std::vector<NodeId> stack{p_.root()};
        std::vector<NodeId> kids;
        while (!stack.empty()) {
            NodeId m = stack.back();
            stack.pop_back();
            order_.push_back(m);
            auto span = p_.children(m);
            kids.assign(span.begin(), span.end());
            if (cfg_.order == ChildOrder::LargestSubtreeFirst)
                std::stable_sort(kids.begin(), kids.end(),
                                 [&](NodeId a, NodeId b) { return p_.subtree_size(a) > p_.subtree_size(b); });
            if (cfg_.pruning.symmetry) {
                for (std::size_t i = 0; i < kids.size(); ++i)
                    for (std::size_t j = i; j-- > 0;)
                        if (p_.edge_kind(kids[j]) == p_.edge_kind(kids[i]) && forms[kids[j]] == forms[kids[i]]) {
                            sym_prev_[kids[i]] = kids[j];
                            break;
                        }
            }
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
        }
    }

    bool admissible(NodeId m, NodeId n, std::size_t assigned) const {
        if (owner_[n] != kNoNode || !labels_.matches(m, n)) return false;
        const Pruning& pr = cfg_.pruning;
        if (pr.symmetry && sym_prev_[m] != kNoNode && n < h_[sym_prev_[m]]) return false;
        if (pr.height && t_.subtree_height(n) < p_.subtree_height(m)) return false;
        if (pr.degree && t_.degree(n) < child_edges_[m]) return false;
        if (pr.size) {
            auto unused = static_cast<std::size_t>(
                static_cast<int>(t_.subtree_size(n)) - used_.range(n, t_.subtree_end(n)));
            if (unused < p_.subtree_size(m)) return false;
        }
        if (anc_) {
            if (pr.ancestor_chain && blocked_[n] != 0) return false;
            for (std::size_t i = 0; i < assigned; ++i) {
                NodeId mp = order_[i];
                NodeId np = h_[mp];
                if (t_.is_ancestor(n, np) != p_.is_ancestor(m, mp)) return false;
                if (t_.is_ancestor(np, n) != p_.is_ancestor(mp, m)) return false;
            }
        }
        return true;
    }

    // Walks the nodes strictly between base and n.
    template <class F>
    void for_chain(NodeId base, NodeId n, F f) {
        for (NodeId x = *t_.parent(n); x != base; x = *t_.parent(x)) f(x);
    }

    // Returns true once a full embedding is in h_; false on failure or when
    // the budget ran out (exhausted_ tells them apart).
    bool try_image(std::size_t i, NodeId m, NodeId n) {
        if (++nodes_ > cfg_.node_budget) {
            exhausted_ = true;
            return false;
        }
        const bool chain = anc_ && cfg_.pruning.ancestor_chain && m != p_.root();
        const NodeId base = m == p_.root() ? kNoNode : h_[*p_.parent(m)];
        h_[m] = n;
        owner_[n] = m;
        used_.add(n, 1);
        if (chain) for_chain(base, n, [&](NodeId x) { ++blocked_[x]; });
        if (assign(i + 1)) return true;
        if (chain) for_chain(base, n, [&](NodeId x) { --blocked_[x]; });
        used_.add(n, -1);
        owner_[n] = kNoNode;
        h_[m] = kNoNode;
        return false;
    }

    bool assign(std::size_t i) {
        if (i == order_.size()) return true;
        const NodeId m = order_[i];
        if (m == p_.root()) return admissible(m, t_.root(), i) && try_image(i, m, t_.root());

        const NodeId base = h_[*p_.parent(m)];
        if (p_.edge_kind(m) == EdgeKind::Child) {
            for (NodeId c : t_.children(base)) {
                if (!admissible(m, c, i)) continue;
                if (try_image(i, m, c)) return true;
                if (exhausted_) return false;
            }
            return false;
        }
        const NodeId end = t_.subtree_end(base);
        for (NodeId x = base + 1; x < end;) {
            NodeId o = owner_[x];
            // Below the image of an unrelated pattern node nothing can work.
            if (anc_ && cfg_.pruning.ancestor_chain && o != kNoNode && !p_.is_ancestor(o, m)) {
                x = t_.subtree_end(x);
                continue;
            }
            if (admissible(m, x, i)) {
                if (try_image(i, m, x)) return true;
                if (exhausted_) return false;
            }
            ++x;
        }
        return false;
    }

    const Tree& t_;
    const Pattern& p_;
    const SearchConfig& cfg_;
    bool anc_;
    LabelMatcher labels_;
    std::vector<NodeId> order_;
    std::vector<NodeId> h_;
    std::vector<NodeId> owner_;
    Fenwick used_;
    std::vector<std::uint32_t> blocked_;
    std::vector<NodeId> sym_prev_;
    std::vector<std::uint32_t> child_edges_;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;
};

CheckResult solve(const Tree& t, const Pattern& p, const SearchConfig& cfg, bool anc) {
    if (cfg.node_budget == 0) throw Error(Errc::InvalidSize, "search node budget must be positive");
    auto start = Clock::now();
    CheckResult r;
    r.algorithm = anc ? "solve_anc" : "solve_inj";
    if (p.size() <= t.size()) {
        Search search(t, p, cfg, anc);
        r.verdict = search.run();
        if (r.verdict == Verdict::Yes && cfg.find_witness) r.witness = Embedding{search.mapping()};
        r.stats.nodes_explored = search.nodes();
    }
    r.stats.elapsed = Clock::now() - start;
    return r;
}

} // namespace

CheckResult solve_inj(const Tree& t, const Pattern& p, const SearchConfig& cfg) { return solve(t, p, cfg, false); }

CheckResult solve_anc(const Tree& t, const Pattern& p, const SearchConfig& cfg) { return solve(t, p, cfg, true); }

} // namespace treembed
