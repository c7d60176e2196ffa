#include "treembed/poly.hpp"

#include "treembed/matching.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace treembed {

namespace {

using Clock = std::chrono::steady_clock;

// Below this many words per row the thread start-up costs more than the row.
constexpr std::int64_t kParallelMinWords = 16;

struct Context {
    Context(const Tree& tree, const Pattern& pattern)
        : t(tree), p(pattern), labels(pattern, tree), tsize(tree.subtree_sizes()),
          theight(tree.subtree_heights()), psize(pattern.subtree_sizes()), pheight(pattern.subtree_heights()) {}

    NodeId tend(NodeId n) const { return n + tsize[n]; }

    const Tree& t;
    const Pattern& p;
    LabelMatcher labels;
    std::span<const std::uint32_t> tsize, theight, psize, pheight;
};

// Tree nodes whose label and subtree height admit pattern node m, one mask
// per distinct required symbol and height, built on first use.
class CandidateMasks {
public:
    explicit CandidateMasks(const Context& cx) : cx_(cx) {}

    Bitset of(NodeId m) {
        Bitset out = height_mask(cx_.pheight[m]);
        if (auto sym = cx_.labels.required_symbol(m)) {
            const Bitset& l = label_mask(*sym);
            for (std::size_t w = 0; w < out.word_count(); ++w) out.word(w) &= l.word(w);
        }
        return out;
    }

private:
    const Bitset& label_mask(std::int32_t sym) {
        auto it = labels_.find(sym);
        if (it != labels_.end()) return it->second;
        Bitset b(cx_.t.size());
        if (sym >= 0)
            for (NodeId n = 0; n < cx_.t.size(); ++n)
                if (cx_.t.label(n).symbol_id() == sym) b.set(n);
        return labels_.emplace(sym, std::move(b)).first->second;
    }

    const Bitset& height_mask(std::uint32_t h) {
        auto it = heights_.find(h);
        if (it != heights_.end()) return it->second;
        Bitset b(cx_.t.size());
        for (NodeId n = 0; n < cx_.t.size(); ++n)
            if (cx_.theight[n] >= h) b.set(n);
        return heights_.emplace(h, std::move(b)).first->second;
    }

    const Context& cx_;
    std::unordered_map<std::int32_t, Bitset> labels_;
    std::unordered_map<std::uint32_t, Bitset> heights_;
};

void and_into(Bitset& dst, const Bitset& src) {
    for (std::size_t w = 0; w < dst.word_count(); ++w) dst.word(w) &= src.word(w);
}

// Sets bit n of row to cell(state, n) for every n in mask; bits outside the
// mask stay clear. Threads own whole words, and each thread builds its own
// scratch state.
template <class MakeState, class Cell>
void fill_row(Bitset& row, const Bitset& mask, MakeState make_state, Cell cell) {
    const auto words = static_cast<std::int64_t>(row.word_count());
#pragma omp parallel if (words >= kParallelMinWords)
    {
        auto state = make_state();
#pragma omp for schedule(dynamic, 4)
        for (std::int64_t w = 0; w < words; ++w) {
            std::uint64_t acc = 0;
            std::size_t base = static_cast<std::size_t>(w) * Bitset::kWordBits;
            for (std::uint64_t todo = mask.word(static_cast<std::size_t>(w)); todo != 0; todo &= todo - 1) {
                int bit = std::countr_zero(todo);
                if (cell(state, static_cast<NodeId>(base + static_cast<std::size_t>(bit))))
                    acc |= std::uint64_t{1} << bit;
            }
            row.word(static_cast<std::size_t>(w)) = acc;
        }
    }
}

// Marks every node with a set bit strictly below it: walk up from each set
// bit until reaching a node that is already marked. Each node is marked once.
void mark_ancestors(const Bitset& row, std::span<const NodeId> parent, Bitset& out) {
    out = Bitset(row.size());
    for (std::size_t x = row.find_next(1); x != Bitset::npos; x = row.find_next(x + 1))
        for (NodeId v = parent[x]; v != kNoNode && !out.test(v); v = parent[v]) out.set(v);
}

// Marks the parent of every set bit.
void mark_parents(const Bitset& row, std::span<const NodeId> parent, Bitset& out) {
    out = Bitset(row.size());
    for (std::size_t x = row.find_next(1); x != Bitset::npos; x = row.find_next(x + 1)) out.set(parent[x]);
}

bool any_row_empty(const PhiTable& phi, std::span<const NodeId> kids) {
    return std::any_of(kids.begin(), kids.end(), [&](NodeId c) { return !phi[c].any(); });
}

PhiTable empty_table(const Tree& t, const Pattern& p) {
    PhiTable phi;
    phi.rows.assign(p.size(), Bitset(t.size()));
    return phi;
}

CheckResult finish(CheckResult r, Clock::time_point start) {
    r.stats.elapsed = Clock::now() - start;
    return r;
}

CheckResult size_bound_no(std::string algorithm, Clock::time_point start) {
    CheckResult r;
    r.algorithm = std::move(algorithm);
    return finish(std::move(r), start);
}

// ---- std -------------------------------------------------------------------

Embedding std_witness(const Context& cx, const PhiTable& phi) {
    Embedding h{std::vector<NodeId>(cx.p.size(), kNoNode)};
    h.image[0] = 0;
    for (NodeId m = 1; m < cx.p.size(); ++m) {
        NodeId base = h.image[*cx.p.parent(m)];
        if (cx.p.edge_kind(m) == EdgeKind::Child) {
            for (NodeId c : cx.t.children(base))
                if (phi[m].test(c)) {
                    h.image[m] = c;
                    break;
                }
        } else {
            h.image[m] = static_cast<NodeId>(phi[m].find_next(base + 1));
        }
    }
    return h;
}

// ---- lca -------------------------------------------------------------------

struct MatchState {
    BipartiteGraph g;
    HopcroftKarp hk;
    Matching matching;
};

// Builds the children(m) x children(n) graph. Returns false as soon as some
// pattern child has no partner.
template <class DescHit>
bool build_lca_graph(const Context& cx, const PhiTable& phi, NodeId m, NodeId n, BipartiteGraph& g,
                     DescHit desc_hit) {
    auto pk = cx.p.children(m);
    auto tk = cx.t.children(n);
    g.reset(static_cast<std::uint32_t>(pk.size()), static_cast<std::uint32_t>(tk.size()));
    for (std::uint32_t i = 0; i < pk.size(); ++i) {
        NodeId c = pk[i];
        bool desc = cx.p.edge_kind(c) == EdgeKind::Descendant;
        bool any = false;
        for (std::uint32_t j = 0; j < tk.size(); ++j) {
            if (desc ? desc_hit(i, tk[j]) : phi[c].test(tk[j])) {
                g.add_edge(i, j);
                any = true;
            }
        }
        if (!any) return false;
    }
    return true;
}

Embedding lca_witness(const Context& cx, const PhiTable& phi) {
    Embedding h{std::vector<NodeId>(cx.p.size(), kNoNode)};
    h.image[0] = 0;
    MatchState s;
    auto depths = cx.t.depths();
    std::vector<NodeId> stack{0};
    while (!stack.empty()) {
        NodeId m = stack.back();
        stack.pop_back();
        NodeId n = h.image[m];
        auto pk = cx.p.children(m);
        if (pk.empty()) continue;
        build_lca_graph(cx, phi, m, n, s.g, [&](std::uint32_t i, NodeId nj) {
            return phi[pk[i]].find_next(nj) < cx.tend(nj);
        });
        s.hk.solve(s.g, s.matching);
        auto tk = cx.t.children(n);
        for (std::uint32_t i = 0; i < pk.size(); ++i) {
            NodeId c = pk[i];
            NodeId nj = tk[s.matching.left_to_right[i]];
            if (cx.p.edge_kind(c) == EdgeKind::Child) {
                h.image[c] = nj;
            } else {
                // Shallowest hit below nj; ties go to the least id.
                NodeId best = kNoNode;
                for (std::size_t x = phi[c].find_next(nj); x < cx.tend(nj); x = phi[c].find_next(x + 1)) {
                    if (best == kNoNode || depths[x] < depths[best]) best = static_cast<NodeId>(x);
                    if (depths[best] == depths[nj]) break;
                }
                h.image[c] = best;
            }
            stack.push_back(c);
        }
    }
    return h;
}

// ---- anc -------------------------------------------------------------------

// Searches for pairwise incomparable images of m's children below n.
class AncTupleSearch {
public:
    enum class Outcome { Found, NotFound, OverBudget };

    AncTupleSearch(const Context& cx, const PhiTable& phi, std::uint64_t budget)
        : cx_(cx), phi_(phi), budget_(budget) {}

    Outcome run(NodeId m, NodeId n) {
        kids_ = cx_.p.children(m);
        const std::size_t k = kids_.size();
        n_ = n;
        end_ = cx_.tend(n);
        slots_.resize(k);
        cost_ = 1;
        for (std::size_t i = 0; i < k; ++i) {
            Slot& s = slots_[i];
            NodeId c = kids_[i];
            s.desc = cx_.p.edge_kind(c) == EdgeKind::Descendant;
            s.list.clear();
            if (s.desc) {
                s.count = phi_[c].count_range(n + 1, end_);
            } else {
                for (NodeId tc : cx_.t.children(n))
                    if (phi_[c].test(tc)) s.list.push_back(tc);
                s.count = s.list.size();
            }
            if (s.count == 0) return Outcome::NotFound;
            cost_ = cost_ > UINT64_MAX / s.count ? UINT64_MAX : cost_ * s.count;
        }
        order_.resize(k);
        std::iota(order_.begin(), order_.end(), 0);
        std::stable_sort(order_.begin(), order_.end(),
                         [&](std::size_t a, std::size_t b) { return slots_[a].count < slots_[b].count; });
        chosen_.assign(k, kNoNode);
        steps_ = 0;
        return extend(0);
    }

    /// Image of the i-th child of m after Found.
    NodeId chosen(std::size_t i) const { return chosen_[i]; }
    /// Product of the candidate set sizes of the last run.
    std::uint64_t cost() const { return cost_; }

private:
    struct Slot {
        bool desc = false;
        std::size_t count = 0;
        std::vector<NodeId> list;
    };

    bool comparable(NodeId a, NodeId b) const {
        return (a <= b && b < cx_.tend(a)) || (b <= a && a < cx_.tend(b));
    }

    Outcome extend(std::size_t depth) {
        if (depth == order_.size()) return Outcome::Found;
        const std::size_t i = order_[depth];
        const Slot& s = slots_[i];
        auto try_node = [&](NodeId x) -> Outcome {
            if (++steps_ > budget_) return Outcome::OverBudget;
            chosen_[i] = x;
            Outcome r = extend(depth + 1);
            if (r == Outcome::NotFound) chosen_[i] = kNoNode;
            return r;
        };

        if (!s.desc) {
            for (NodeId x : s.list) {
                bool clash = false;
                for (std::size_t d = 0; d < depth && !clash; ++d) clash = comparable(x, chosen_[order_[d]]);
                if (clash) continue;
                if (Outcome r = try_node(x); r != Outcome::NotFound) return r;
            }
            return Outcome::NotFound;
        }

        const Bitset& row = phi_[kids_[i]];
        std::size_t x = row.find_next(n_ + 1);
        while (x < end_) {
            // Candidates inside a chosen subtree are skipped wholesale.
            std::size_t jump = 0;
            bool above = false;
            for (std::size_t d = 0; d < depth; ++d) {
                NodeId y = chosen_[order_[d]];
                if (y <= x && x < cx_.tend(y))
                    jump = std::max<std::size_t>(jump, cx_.tend(y));
                else if (x < y && y < cx_.tend(static_cast<NodeId>(x)))
                    above = true;
            }
            if (jump != 0) {
                x = row.find_next(jump);
                continue;
            }
            if (!above)
                if (Outcome r = try_node(static_cast<NodeId>(x)); r != Outcome::NotFound) return r;
            x = row.find_next(x + 1);
        }
        return Outcome::NotFound;
    }

    const Context& cx_;
    const PhiTable& phi_;
    std::uint64_t budget_;
    std::span<const NodeId> kids_;
    NodeId n_ = 0;
    std::size_t end_ = 0;
    std::vector<Slot> slots_;
    std::vector<std::size_t> order_;
    std::vector<NodeId> chosen_;
    std::uint64_t steps_ = 0;
    std::uint64_t cost_ = 0;
};

PhiTable anc_table_impl(const Context& cx, AncLimits limits) {
    PhiTable phi = empty_table(cx.t, cx.p);
    CandidateMasks masks(cx);
    Bitset hits;
    std::atomic<bool> over{false};
    std::atomic<std::uint64_t> over_cost{0};
    for (NodeId m = static_cast<NodeId>(cx.p.size()); m-- > 0;) {
        auto kids = cx.p.children(m);
        if (any_row_empty(phi, kids)) continue;
        Bitset mask = masks.of(m);
        for (NodeId c : kids) {
            if (cx.p.edge_kind(c) == EdgeKind::Descendant)
                mark_ancestors(phi[c], cx.t.parents(), hits);
            else
                mark_parents(phi[c], cx.t.parents(), hits);
            and_into(mask, hits);
        }
        fill_row(
            phi.rows[m], mask, [&] { return AncTupleSearch(cx, phi, limits.max_tuple_steps); },
            [&](AncTupleSearch& search, NodeId n) {
                if (over.load(std::memory_order_relaxed)) return false;
                if (kids.empty()) return true;
                if (cx.tsize[n] < cx.psize[m]) return false;
                switch (search.run(m, n)) {
                case AncTupleSearch::Outcome::Found: return true;
                case AncTupleSearch::Outcome::NotFound: return false;
                case AncTupleSearch::Outcome::OverBudget:
                    over_cost.store(search.cost(), std::memory_order_relaxed);
                    over.store(true, std::memory_order_relaxed);
                    return false;
                }
                return false;
            });
        if (over.load()) throw BudgetExceeded(over_cost.load());
    }
    return phi;
}

Embedding anc_witness(const Context& cx, const PhiTable& phi, AncLimits limits) {
    Embedding h{std::vector<NodeId>(cx.p.size(), kNoNode)};
    h.image[0] = 0;
    AncTupleSearch search(cx, phi, limits.max_tuple_steps);
    for (NodeId m = 0; m < cx.p.size(); ++m) {
        auto kids = cx.p.children(m);
        if (kids.empty()) continue;
        // The same cell succeeded while the table was built; the search is
        // deterministic, so it succeeds again.
        if (search.run(m, h.image[m]) != AncTupleSearch::Outcome::Found)
            throw std::logic_error("anc witness reconstruction failed");
        for (std::size_t i = 0; i < kids.size(); ++i) h.image[kids[i]] = search.chosen(i);
    }
    return h;
}

} // namespace

PhiTable std_table(const Tree& t, const Pattern& p) {
    Context cx(t, p);
    CandidateMasks masks(cx);
    PhiTable phi = empty_table(t, p);
    Bitset hits;
    for (NodeId m = static_cast<NodeId>(p.size()); m-- > 0;) {
        auto kids = p.children(m);
        if (any_row_empty(phi, kids)) continue;
        // Every condition is a per-node mask, so the row is their conjunction.
        Bitset row = masks.of(m);
        for (NodeId c : kids) {
            if (p.edge_kind(c) == EdgeKind::Descendant)
                mark_ancestors(phi[c], t.parents(), hits);
            else
                mark_parents(phi[c], t.parents(), hits);
            and_into(row, hits);
        }
        phi.rows[m] = std::move(row);
    }
    return phi;
}

PhiTable lca_table(const Tree& t, const Pattern& p) {
    Context cx(t, p);
    CandidateMasks masks(cx);
    PhiTable phi = empty_table(t, p);
    // below[i]: nodes with an image of kids[i] strictly below them.
    std::vector<Bitset> below;
    Bitset parents;
    for (NodeId m = static_cast<NodeId>(p.size()); m-- > 0;) {
        auto kids = p.children(m);
        if (any_row_empty(phi, kids)) continue;
        const std::size_t k = kids.size();
        // A cell needs a partner for every pattern child on its own; the
        // matching runs only where all of them have one.
        Bitset mask = masks.of(m);
        below.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            if (p.edge_kind(kids[i]) == EdgeKind::Descendant) {
                mark_ancestors(phi[kids[i]], t.parents(), below[i]);
                and_into(mask, below[i]);
            } else {
                mark_parents(phi[kids[i]], t.parents(), parents);
                and_into(mask, parents);
            }
        }
        fill_row(phi.rows[m], mask, [] { return MatchState{}; }, [&](MatchState& s, NodeId n) {
            if (k == 0) return true;
            if (t.degree(n) < k || cx.tsize[n] < cx.psize[m]) return false;
            // Reflexive: a descendant-edge child may land on n_j itself.
            auto desc_hit = [&](std::uint32_t i, NodeId nj) { return phi[kids[i]].test(nj) || below[i].test(nj); };
            if (!build_lca_graph(cx, phi, m, n, s.g, desc_hit)) return false;
            s.hk.solve(s.g, s.matching);
            return s.matching.size == k;
        });
    }
    return phi;
}

PhiTable anc_table(const Tree& t, const Pattern& p, AncLimits limits) {
    Context cx(t, p);
    return anc_table_impl(cx, limits);
}

CheckResult check_std(const Tree& t, const Pattern& p) {
    auto start = Clock::now();
    Context cx(t, p);
    PhiTable phi = std_table(t, p);
    CheckResult r;
    r.algorithm = "check_std";
    if (phi[0].test(0)) {
        r.verdict = Verdict::Yes;
        r.witness = std_witness(cx, phi);
    }
    return finish(std::move(r), start);
}

CheckResult check_lca(const Tree& t, const Pattern& p) {
    auto start = Clock::now();
    if (p.size() > t.size()) return size_bound_no("check_lca", start);
    Context cx(t, p);
    PhiTable phi = lca_table(t, p);
    CheckResult r;
    r.algorithm = "check_lca";
    if (phi[0].test(0)) {
        r.verdict = Verdict::Yes;
        r.witness = lca_witness(cx, phi);
    }
    return finish(std::move(r), start);
}

CheckResult check_anc_bounded(const Tree& t, const Pattern& p, AncLimits limits) {
    auto start = Clock::now();
    if (p.size() > t.size()) return size_bound_no("check_anc_bounded", start);
    Context cx(t, p);
    PhiTable phi = anc_table_impl(cx, limits);
    CheckResult r;
    r.algorithm = "check_anc_bounded";
    if (phi[0].test(0)) {
        r.verdict = Verdict::Yes;
        r.witness = anc_witness(cx, phi, limits);
    }
    return finish(std::move(r), start);
}

std::uint64_t anc_bounded_cost(const Tree& t, const Pattern& p) {
    const std::uint64_t base = t.size();
    std::uint64_t total = 0;
    for (NodeId m = 0; m < p.size(); ++m) {
        std::uint64_t c = 1;
        for (std::size_t i = 0; i <= p.degree(m); ++i) c = c > UINT64_MAX / base ? UINT64_MAX : c * base;
        total = total > UINT64_MAX - c ? UINT64_MAX : total + c;
    }
    return total;
}

// ---- height one ------------------------------------------------------------

HeightOneCounts count_height_one(const Tree& t, const Pattern& p) {
    if (p.height() > 1)
        throw Error(Errc::HeightTooLarge, "pattern height " + std::to_string(p.height()) + " exceeds 1");
    HeightOneCounts c;
    c.labels = t.alphabet();
    for (const auto& name : p.alphabet())
        if (!t.find_symbol(name)) c.labels.push_back(name);
    const std::size_t sigma = c.labels.size();
    c.p_child.assign(sigma, 0);
    c.p_desc.assign(sigma, 0);
    c.t_depth1.assign(sigma, 0);
    c.t_depth_ge2.assign(sigma, 0);
    c.t_depth_ge1.assign(sigma, 0);

    auto index_of = [&](std::string_view name) {
        return static_cast<std::size_t>(std::find(c.labels.begin(), c.labels.end(), name) - c.labels.begin());
    };
    for (NodeId m : p.children(p.root())) {
        bool desc = p.edge_kind(m) == EdgeKind::Descendant;
        if (p.label(m).is_wildcard()) {
            ++(desc ? c.p_desc_wild : c.p_child_wild);
            continue;
        }
        std::size_t a = index_of(p.label_name(m));
        ++(desc ? c.p_desc : c.p_child)[a];
    }
    for (NodeId n = 1; n < t.size(); ++n) {
        auto a = static_cast<std::size_t>(t.label(n).symbol_id());
        ++(t.depth(n) == 1 ? c.t_depth1 : c.t_depth_ge2)[a];
        ++c.t_depth_ge1[a];
    }
    c.roots_compatible = LabelMatcher(p, t).matches(p.root(), t.root());
    return c;
}

bool height_one_counting(const HeightOneCounts& c, CountingReading reading) {
    if (!c.roots_compatible) return false;
    std::int64_t depth1_left = 0;
    std::int64_t pattern_children = c.p_child_wild + c.p_desc_wild;
    std::int64_t tree_nodes = 0;
    for (std::size_t a = 0; a < c.labels.size(); ++a) {
        // (1) labeled child-edge children need depth-1 nodes of their label
        if (c.p_child[a] > c.t_depth1[a]) return false;
        // (2) labeled children of either kind need distinct nodes of their label
        if (c.p_child[a] + c.p_desc[a] > c.t_depth_ge1[a]) return false;
        std::int64_t overflow = c.p_desc[a] - c.t_depth_ge2[a];
        overflow = reading == CountingReading::Corrected ? std::max<std::int64_t>(overflow, 0)
                                                         : std::min<std::int64_t>(overflow, 0);
        depth1_left += c.t_depth1[a] - c.p_child[a] - overflow;
        pattern_children += c.p_child[a] + c.p_desc[a];
        tree_nodes += c.t_depth_ge1[a];
    }
    // (3) wildcard child-edge children take the depth-1 nodes nobody else needs
    if (c.p_child_wild > depth1_left) return false;
    // (4) everything fits into the non-root tree nodes
    return pattern_children <= tree_nodes;
}

bool height_one_matching(const Tree& t, const Pattern& p, Embedding* witness) {
    if (p.height() > 1)
        throw Error(Errc::HeightTooLarge, "pattern height " + std::to_string(p.height()) + " exceeds 1");
    LabelMatcher labels(p, t);
    if (!labels.matches(p.root(), t.root())) return false;
    auto kids = p.children(p.root());
    if (kids.size() + 1 > t.size()) return false;
    BipartiteGraph g(static_cast<std::uint32_t>(kids.size()), static_cast<std::uint32_t>(t.size() - 1));
    for (std::uint32_t i = 0; i < kids.size(); ++i) {
        bool child_edge = p.edge_kind(kids[i]) == EdgeKind::Child;
        for (NodeId n = 1; n < t.size(); ++n)
            if (labels.matches(kids[i], n) && (!child_edge || t.depth(n) == 1)) g.add_edge(i, n - 1);
    }
    Matching mt = max_bipartite_matching(g);
    if (mt.size != kids.size()) return false;
    if (witness) {
        witness->image.assign(p.size(), kNoNode);
        witness->image[p.root()] = t.root();
        for (std::uint32_t i = 0; i < kids.size(); ++i) witness->image[kids[i]] = mt.left_to_right[i] + 1;
    }
    return true;
}

CheckResult check_inj_height1(const Tree& t, const Pattern& p) {
    auto start = Clock::now();
    if (p.height() > 1)
        throw Error(Errc::HeightTooLarge, "pattern height " + std::to_string(p.height()) + " exceeds 1");
    if (p.size() > t.size()) return size_bound_no("check_inj_height1", start);
    Embedding h;
    bool by_matching = height_one_matching(t, p, &h);
    bool by_counting = height_one_counting(count_height_one(t, p));
    if (by_matching != by_counting) throw std::logic_error("height-one counting and matching checks disagree");
    CheckResult r;
    r.algorithm = "check_inj_height1";
    if (by_matching) {
        r.verdict = Verdict::Yes;
        r.witness = std::move(h);
    }
    return finish(std::move(r), start);
}

// ---- dispatch --------------------------------------------------------------

CheckResult dispatch(const Tree& t, const Pattern& p, EmbeddingKind kind, const DispatchOptions& opts) {
    if (kind == EmbeddingKind::Std) return check_std(t, p);
    // On paths every standard embedding is injective, ancestor- and
    // lca-preserving.
    if (p.is_path()) return check_std(t, p);
    if (p.size() > t.size()) return size_bound_no("size_bound", Clock::now());
    // Without descendant edges the injective kinds coincide.
    if (!p.has_descendant_edges() || kind == EmbeddingKind::Lca) return check_lca(t, p);
    if (kind == EmbeddingKind::Anc) {
        if (anc_bounded_cost(t, p) <= opts.anc_cost_budget) {
            try {
                return check_anc_bounded(t, p, AncLimits{opts.anc_cost_budget});
            } catch (const BudgetExceeded&) {
            }
        }
        return solve_anc(t, p, opts.search);
    }
    if (p.height() <= 1) return check_inj_height1(t, p);
    return solve_inj(t, p, opts.search);
}

} // namespace treembed
