#include "treembed/reductions.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace treembed {

std::string_view reduction_name(ReductionKind kind) noexcept {
    switch (kind) {
    case ReductionKind::Inj: return "inj";
    case ReductionKind::Anc: return "anc";
    case ReductionKind::InjH2: return "inj-h2";
    case ReductionKind::InjWc: return "inj-wc";
    case ReductionKind::InjNowc: return "inj-nowc";
    case ReductionKind::AncWc: return "anc-wc";
    }
    return "?";
}

std::optional<ReductionKind> parse_reduction(std::string_view name) noexcept {
    for (auto k : kAllReductions)
        if (reduction_name(k) == name) return k;
    return std::nullopt;
}

bool targets_anc(ReductionKind kind) noexcept { return kind == ReductionKind::Anc || kind == ReductionKind::AncWc; }

bool sat_brute_force(const CnfFormula& f) {
    if (f.num_vars > kMaxBruteForceVars)
        throw Error(Errc::TooManyVariables, std::to_string(f.num_vars) + " variables, at most " +
                                                std::to_string(kMaxBruteForceVars) + " supported");
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << f.num_vars); ++v) {
        bool all = std::all_of(f.clauses.begin(), f.clauses.end(), [&](const std::vector<int>& cl) {
            return std::any_of(cl.begin(), cl.end(), [&](int lit) {
                bool value = (v >> (std::abs(lit) - 1)) & 1U;
                return lit > 0 ? value : !value;
            });
        });
        if (all) return true;
    }
    return false;
}

namespace {

std::string var(std::size_t i) { return "x" + std::to_string(i); }
std::string clause(std::size_t j) { return "c" + std::to_string(j); }

// Clauses (1-based, ascending) holding the literal.
std::vector<std::size_t> clauses_with(const CnfFormula& f, int literal) {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < f.clauses.size(); ++j)
        if (std::find(f.clauses[j].begin(), f.clauses[j].end(), literal) != f.clauses[j].end()) out.push_back(j + 1);
    return out;
}

int literal(std::size_t i, bool positive) {
    return positive ? static_cast<int>(i) : -static_cast<int>(i);
}

NodeId add_gadget(StructureBuilder& b, NodeId parent, EdgeKind edge, std::size_t k, std::size_t s,
                  std::string_view label) {
    NodeId top = b.add_child(parent, label, edge);
    for (std::size_t i = 0; i < k + 3; ++i) b.add_child(top, label);
    NodeId cur = top;
    for (std::size_t i = 0; i < s; ++i) cur = b.add_child(cur, label);
    for (std::size_t i = 0; i < k + 3; ++i) b.add_child(cur, label);
    return top;
}

enum class Leaves : std::uint8_t { Labeled, Wildcard, NoWildcard };

// Shared builder for the height-2 reduction and its gadget variants.
Instance build_inj_h2(const CnfFormula& f, Leaves mode) {
    const std::size_t n = f.num_vars;
    const std::size_t k = f.clauses.size();
    const bool gadgets = mode != Leaves::Labeled;
    const std::string_view plabel = mode == Leaves::NoWildcard ? "a" : "*";

    // A tree leaf carrying `name`, or its gadget T^k_index.
    auto tree_leaf = [&](StructureBuilder& b, NodeId parent, const std::string& name, std::size_t index) {
        if (gadgets)
            add_gadget(b, parent, EdgeKind::Child, k, index, "a");
        else
            b.add_child(parent, name);
    };

    StructureBuilder tb;
    NodeId r = tb.add_node("a");
    for (std::size_t i = 1; i <= n; ++i) {
        auto pos = clauses_with(f, literal(i, true));
        auto neg = clauses_with(f, literal(i, false));
        NodeId xp = tb.add_child(r, "a");
        NodeId xn = tb.add_child(xp, "a");
        for (std::size_t j = 0; j < k; ++j) {
            if (j < pos.size())
                tree_leaf(tb, xp, clause(pos[j]), pos[j]);
            else
                tb.add_child(xp, "a");
        }
        tree_leaf(tb, xn, "s" + std::to_string(i), k + i);
        for (std::size_t j = 0; j < k + 1; ++j) {
            if (j < neg.size())
                tree_leaf(tb, xn, clause(neg[j]), neg[j]);
            else
                tb.add_child(xn, "a");
        }
    }

    StructureBuilder pb;
    NodeId pr = pb.add_node(plabel);
    for (std::size_t i = 1; i <= n; ++i) {
        NodeId g = pb.add_child(pr, plabel, EdgeKind::Descendant);
        if (gadgets)
            add_gadget(pb, g, EdgeKind::Descendant, k, k + i, plabel);
        else
            pb.add_child(g, "s" + std::to_string(i), EdgeKind::Descendant);
        for (std::size_t j = 0; j < k + 1; ++j) pb.add_child(g, plabel);
    }
    for (std::size_t j = 1; j <= k; ++j) {
        if (gadgets)
            add_gadget(pb, pr, EdgeKind::Descendant, k, j, plabel);
        else
            pb.add_child(pr, clause(j), EdgeKind::Descendant);
    }
    return {Tree(tb), Pattern(pb)};
}

} // namespace

Instance gen_inj_reduction(const CnfFormula& f) {
    const std::size_t k = f.clauses.size();
    StructureBuilder tb;
    NodeId r = tb.add_node("r");
    for (std::size_t i = 1; i <= f.num_vars; ++i) {
        for (bool positive : {true, false}) {
            auto with = clauses_with(f, literal(i, positive));
            NodeId cur = tb.add_child(r, var(i));
            for (std::size_t j = 1; j <= k; ++j) {
                bool hit = std::find(with.begin(), with.end(), j) != with.end();
                cur = tb.add_child(cur, hit ? clause(j) : "bot");
            }
        }
    }
    StructureBuilder pb;
    NodeId pr = pb.add_node("r");
    for (std::size_t i = 1; i <= f.num_vars; ++i) {
        NodeId cur = pb.add_child(pr, var(i), EdgeKind::Descendant);
        for (std::size_t j = 0; j < k; ++j) cur = pb.add_child(cur, "*");
    }
    for (std::size_t j = 1; j <= k; ++j) pb.add_child(pr, clause(j), EdgeKind::Descendant);
    return {Tree(tb), Pattern(pb)};
}

Instance gen_anc_reduction(const CnfFormula& f) {
    StructureBuilder tb;
    NodeId r = tb.add_node("r");
    for (std::size_t i = 1; i <= f.num_vars; ++i)
        for (bool positive : {true, false}) {
            NodeId x = tb.add_child(r, var(i));
            for (std::size_t j : clauses_with(f, literal(i, positive))) tb.add_child(x, clause(j));
        }
    StructureBuilder pb;
    NodeId pr = pb.add_node("r");
    for (std::size_t i = 1; i <= f.num_vars; ++i) pb.add_child(pr, var(i));
    for (std::size_t j = 1; j <= f.clauses.size(); ++j) pb.add_child(pr, clause(j), EdgeKind::Descendant);
    return {Tree(tb), Pattern(pb)};
}

Instance gen_inj_h2_reduction(const CnfFormula& f) { return build_inj_h2(f, Leaves::Labeled); }
Instance gen_inj_wc_reduction(const CnfFormula& f) { return build_inj_h2(f, Leaves::Wildcard); }
Instance gen_inj_nowc_reduction(const CnfFormula& f) { return build_inj_h2(f, Leaves::NoWildcard); }

Instance gen_anc_wc_reduction(const CnfFormula& f) {
    const std::size_t n = f.num_vars;
    const std::size_t k = f.clauses.size();
    StructureBuilder tb;
    NodeId r = tb.add_node("a");
    for (std::size_t i = 1; i <= n; ++i)
        for (bool positive : {true, false}) {
            NodeId x = tb.add_child(r, "a");
            add_gadget(tb, x, EdgeKind::Child, k, k + i, "a");
            for (std::size_t j : clauses_with(f, literal(i, positive))) add_gadget(tb, x, EdgeKind::Child, k, j, "a");
        }
    StructureBuilder pb;
    NodeId pr = pb.add_node("*");
    for (std::size_t i = 1; i <= n; ++i) {
        NodeId x = pb.add_child(pr, "*");
        add_gadget(pb, x, EdgeKind::Child, k, k + i, "*");
    }
    for (std::size_t j = 1; j <= k; ++j) add_gadget(pb, pr, EdgeKind::Descendant, k, j, "*");
    return {Tree(tb), Pattern(pb)};
}

Instance generate(ReductionKind kind, const CnfFormula& f) {
    switch (kind) {
    case ReductionKind::Inj: return gen_inj_reduction(f);
    case ReductionKind::Anc: return gen_anc_reduction(f);
    case ReductionKind::InjH2: return gen_inj_h2_reduction(f);
    case ReductionKind::InjWc: return gen_inj_wc_reduction(f);
    case ReductionKind::InjNowc: return gen_inj_nowc_reduction(f);
    case ReductionKind::AncWc: return gen_anc_wc_reduction(f);
    }
    throw Error(Errc::InvalidSize, "unknown reduction");
}

Tree gadget_t(std::size_t k, std::size_t s) {
    if (s < 1) throw Error(Errc::InvalidSize, "gadget path length must be at least 1");
    StructureBuilder b;
    // add_gadget needs a parent; build under a scratch root and re-root.
    NodeId scratch = b.add_node("a");
    NodeId top = add_gadget(b, scratch, EdgeKind::Child, k, s, "a");
    StructureBuilder out;
    std::vector<NodeId> id(b.node_count(), kNoNode);
    id[top] = out.add_node("a");
    for (const auto& e : b.edges())
        if (e.parent != scratch) id[e.child] = out.add_child(id[e.parent], "a");
    return Tree(out);
}

namespace {

// Copies s|from below parent in b (or as a new root when parent is kNoNode).
NodeId copy_subtree(StructureBuilder& b, const Structure& s, NodeId from, NodeId parent, EdgeKind edge) {
    NodeId root = parent == kNoNode ? b.add_node(s.label_name(from)) : b.add_child(parent, s.label_name(from), edge);
    std::vector<std::pair<NodeId, NodeId>> stack{{from, root}};
    while (!stack.empty()) {
        auto [src, dst] = stack.back();
        stack.pop_back();
        for (NodeId c : s.children(src)) stack.emplace_back(c, b.add_child(dst, s.label_name(c), s.edge_kind(c)));
    }
    return root;
}

} // namespace

Instance reduce_degree(const Tree& t, const Pattern& p) {
    auto pk = p.children(p.root());
    for (NodeId c : pk)
        if (p.edge_kind(c) == EdgeKind::Child)
            throw Error(Errc::ShapeMismatch, "pattern root has a child edge");
    if (!LabelMatcher(p, t).matches(p.root(), t.root()))
        throw Error(Errc::ShapeMismatch, "pattern root label does not match the tree root");
    if (pk.empty()) return {t, p};

    std::set<std::string> taken(t.alphabet().begin(), t.alphabet().end());
    taken.insert(p.alphabet().begin(), p.alphabet().end());
    std::vector<std::string> fresh;
    for (std::size_t i = 1; fresh.size() < pk.size(); ++i) {
        std::string name = "A" + std::to_string(i);
        if (!taken.count(name)) fresh.push_back(name);
    }

    StructureBuilder tb;
    NodeId cur = tb.add_node(fresh[0]);
    for (std::size_t i = 1; i < fresh.size(); ++i) cur = tb.add_child(cur, fresh[i]);
    for (NodeId c : t.children(t.root())) copy_subtree(tb, t, c, cur, EdgeKind::Child);

    StructureBuilder pb;
    NodeId spine = kNoNode;
    for (std::size_t i = 0; i < pk.size(); ++i) {
        spine = spine == kNoNode ? pb.add_node(fresh[i]) : pb.add_child(spine, fresh[i]);
        copy_subtree(pb, p, pk[i], spine, EdgeKind::Descendant);
    }
    return {Tree(tb), Pattern(pb)};
}

} // namespace treembed
