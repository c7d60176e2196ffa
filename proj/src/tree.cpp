#include "treembed/tree.hpp"

#include <algorithm>
#include <unordered_map>

namespace treembed {

namespace {

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    });
}

std::string node_str(NodeId n) { return "node " + std::to_string(n); }

std::string edge_str(NodeId p, NodeId c) {
    return "edge (" + std::to_string(p) + ", " + std::to_string(c) + ")";
}

} // namespace

NodeId StructureBuilder::add_node(std::string_view label) {
    labels_.emplace_back(label);
    return static_cast<NodeId>(labels_.size() - 1);
}

void StructureBuilder::add_edge(NodeId parent, NodeId child, EdgeKind kind) {
    edges_.push_back({parent, child, kind});
}

NodeId StructureBuilder::add_child(NodeId parent, std::string_view label, EdgeKind kind) {
    NodeId c = add_node(label);
    add_edge(parent, c, kind);
    return c;
}

void StructureBuilder::set_label(NodeId n, std::string_view label) {
    if (n >= labels_.size()) throw Error(Errc::InvalidNode, node_str(n));
    labels_[n] = std::string(label);
}

void validate(const StructureBuilder& b, bool require_tree) {
    const std::size_t n = b.node_count();
    if (n == 0) throw Error(Errc::EmptyStructure, "structure has no nodes");
    if (b.root() >= n) throw Error(Errc::InvalidNode, "root " + node_str(b.root()));

    for (NodeId v = 0; v < n; ++v) {
        const std::string& l = b.labels()[v];
        if (l == kWildcardText) {
            if (require_tree) throw Error(Errc::WildcardInTree, node_str(v) + " is labeled '*'");
        } else if (!is_identifier(l)) {
            throw Error(Errc::InvalidLabel, node_str(v) + " has label '" + l + "'");
        }
    }

    auto edges = b.edges();
    for (const auto& e : edges) {
        if (e.parent >= n || e.child >= n) throw Error(Errc::InvalidNode, edge_str(e.parent, e.child));
        if (e.parent == e.child) throw Error(Errc::CycleDetected, "self loop on " + node_str(e.child));
        if (require_tree && e.kind == EdgeKind::Descendant)
            throw Error(Errc::DescEdgeInTree, edge_str(e.parent, e.child));
    }

    std::sort(edges.begin(), edges.end(), [](const auto& x, const auto& y) {
        return std::tie(x.parent, x.child, x.kind) < std::tie(y.parent, y.child, y.kind);
    });
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (edges[i].parent == edges[i - 1].parent && edges[i].child == edges[i - 1].child &&
            edges[i].kind != edges[i - 1].kind)
            throw Error(Errc::DisjointnessViolation,
                        edge_str(edges[i].parent, edges[i].child) + " is both a child and a descendant edge");
    }

    std::vector<NodeId> parent(n, kNoNode);
    for (const auto& e : b.edges()) {
        if (parent[e.child] != kNoNode)
            throw Error(Errc::MultipleParents, node_str(e.child) + " has more than one predecessor");
        parent[e.child] = e.parent;
    }
    if (parent[b.root()] != kNoNode)
        throw Error(Errc::CycleDetected, "root " + node_str(b.root()) + " has a predecessor");
    for (NodeId v = 0; v < n; ++v)
        if (v != b.root() && parent[v] == kNoNode)
            throw Error(Errc::MissingParent, node_str(v) + " is not the root and has no predecessor");

    // Every non-root node has exactly one parent, so anything unreachable from
    // the root sits on a cycle.
    std::vector<std::vector<NodeId>> kids(n);
    for (const auto& e : b.edges()) kids[e.parent].push_back(e.child);
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{b.root()};
    seen[b.root()] = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId c : kids[v])
            if (!seen[c]) {
                seen[c] = 1;
                stack.push_back(c);
            }
    }
    for (NodeId v = 0; v < n; ++v)
        if (!seen[v]) throw Error(Errc::CycleDetected, node_str(v) + " lies on a cycle");
}

Structure::Structure(const StructureBuilder& b) {
    const std::size_t n = b.node_count();
    std::vector<std::vector<std::pair<NodeId, EdgeKind>>> kids(n);
    for (const auto& e : b.edges()) kids[e.parent].emplace_back(e.child, e.kind);

    // Preorder renumbering, children in insertion order.
    std::vector<NodeId> order;
    order.reserve(n);
    std::vector<NodeId> new_id(n, kNoNode);
    std::vector<NodeId> stack{b.root()};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        new_id[v] = static_cast<NodeId>(order.size());
        order.push_back(v);
        for (auto it = kids[v].rbegin(); it != kids[v].rend(); ++it) stack.push_back(it->first);
    }

    parent_.assign(n, kNoNode);
    edge_kind_.assign(n, EdgeKind::Child);
    labels_.resize(n);
    child_begin_.assign(n + 1, 0);
    child_index_.assign(n, 0);
    depth_.assign(n, 0);
    subtree_size_.assign(n, 1);
    subtree_height_.assign(n, 0);
    child_list_.reserve(n > 0 ? n - 1 : 0);

    for (NodeId id = 0; id < n; ++id) {
        NodeId old = order[id];
        const std::string& name = b.labels()[old];
        if (name == kWildcardText) {
            labels_[id] = Label::wildcard();
            ++wildcard_count_;
        } else {
            auto [it, inserted] = symbol_index_.try_emplace(name, static_cast<std::int32_t>(alphabet_.size()));
            if (inserted) alphabet_.push_back(name);
            labels_[id] = Label::symbol(it->second);
        }
        child_begin_[id] = static_cast<std::uint32_t>(child_list_.size());
        std::uint32_t idx = 0;
        for (auto [c, kind] : kids[old]) {
            NodeId cid = new_id[c];
            child_list_.push_back(cid);
            parent_[cid] = id;
            edge_kind_[cid] = kind;
            child_index_[cid] = idx++;
            depth_[cid] = depth_[id] + 1;
            if (kind == EdgeKind::Descendant) ++desc_edge_count_;
        }
        max_degree_ = std::max<std::size_t>(max_degree_, kids[old].size());
    }
    child_begin_[n] = static_cast<std::uint32_t>(child_list_.size());

    for (NodeId id = static_cast<NodeId>(n); id-- > 1;) {
        NodeId p = parent_[id];
        subtree_size_[p] += subtree_size_[id];
        subtree_height_[p] = std::max(subtree_height_[p], subtree_height_[id] + 1);
    }
}

std::string_view Structure::label_name(NodeId n) const {
    Label l = label(n);
    return l.is_wildcard() ? kWildcardText : std::string_view(alphabet_[l.symbol_id()]);
}

std::optional<std::int32_t> Structure::find_symbol(std::string_view name) const {
    auto it = symbol_index_.find(std::string(name));
    if (it == symbol_index_.end()) return std::nullopt;
    return it->second;
}

NodeId Structure::lca(NodeId a, NodeId b) const {
    check(a);
    check(b);
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
        a = parent_[a];
        b = parent_[b];
    }
    return a;
}

std::vector<std::string> Structure::canonical_forms() const {
    std::vector<std::string> form(size());
    std::vector<std::string> parts;
    for (NodeId n = static_cast<NodeId>(size()); n-- > 0;) {
        std::string s(label_name(n));
        auto kids = children(n);
        if (!kids.empty()) {
            parts.clear();
            for (NodeId c : kids)
                parts.push_back((edge_kind_[c] == EdgeKind::Descendant ? "//" : "") + form[c]);
            std::sort(parts.begin(), parts.end());
            s += '(';
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ',';
                s += parts[i];
            }
            s += ')';
        }
        form[n] = std::move(s);
    }
    return form;
}

std::string Structure::canonical_form(NodeId n) const {
    check(n);
    // Cheap enough at the sizes where callers compare structures.
    return canonical_forms()[n];
}

StructureBuilder Structure::to_builder() const {
    StructureBuilder b;
    for (NodeId n = 0; n < size(); ++n) b.add_node(label_name(n));
    for (NodeId n = 1; n < size(); ++n) b.add_edge(parent_[n], n, edge_kind_[n]);
    return b;
}

Pattern::Pattern(const StructureBuilder& b) : Structure((validate(b, false), b)) {}

Pattern::Pattern(const Tree& t) : Structure(static_cast<const Structure&>(t)) {}

Tree::Tree(const StructureBuilder& b) : Structure((validate(b, true), b)) {}

LabelMatcher::LabelMatcher(const Structure& pattern, const Structure& tree) {
    std::vector<std::int32_t> translate(pattern.alphabet().size(), kAbsent);
    for (std::size_t i = 0; i < translate.size(); ++i)
        if (auto s = tree.find_symbol(pattern.alphabet()[i])) translate[i] = *s;
    wanted_.resize(pattern.size());
    for (NodeId m = 0; m < pattern.size(); ++m) {
        Label l = pattern.label(m);
        wanted_[m] = l.is_wildcard() ? kAny : translate[l.symbol_id()];
    }
    tree_labels_.resize(tree.size());
    for (NodeId n = 0; n < tree.size(); ++n) tree_labels_[n] = tree.label(n).symbol_id();
}

} // namespace treembed
