#pragma once

// Arena-stored rooted unordered labeled trees and tree patterns.
//
// A validated structure renumbers its nodes into preorder (children keep the
// order in which they were added), so NodeId 0 is the root, the subtree of n
// is the contiguous id range [n, n + subtree_size(n)), and ancestorship is an
// interval test. Sibling order is kept only for determinism; nothing in the
// library gives it meaning.

#include "treembed/errors.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace treembed {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class EdgeKind : std::uint8_t { Child, Descendant };

/// Interned label: an index into the owning structure's alphabet, or the
/// wildcard. Label values are only comparable within one structure; use
/// LabelMatcher to compare a pattern against a tree.
class Label {
public:
    static constexpr std::int32_t kWildcardSymbol = -1;

    constexpr Label() = default;
    static constexpr Label wildcard() noexcept { return Label{}; }
    static constexpr Label symbol(std::int32_t id) noexcept {
        Label l;
        l.symbol_ = id;
        return l;
    }

    constexpr bool is_wildcard() const noexcept { return symbol_ == kWildcardSymbol; }
    constexpr std::int32_t symbol_id() const noexcept { return symbol_; }

    friend constexpr bool operator==(Label, Label) = default;

private:
    std::int32_t symbol_ = kWildcardSymbol;
};

inline constexpr std::string_view kWildcardText = "*";

/// Mutable staging area for a structure. Node ids handed out here are builder
/// ids; the validated structure assigns its own (preorder) ids.
class StructureBuilder {
public:
    struct Edge {
        NodeId parent;
        NodeId child;
        EdgeKind kind;
    };

    /// "*" creates a wildcard node.
    NodeId add_node(std::string_view label);
    void add_edge(NodeId parent, NodeId child, EdgeKind kind = EdgeKind::Child);
    /// add_node + add_edge.
    NodeId add_child(NodeId parent, std::string_view label, EdgeKind kind = EdgeKind::Child);

    /// Defaults to the first node added.
    void set_root(NodeId root) { root_ = root; }
    void set_label(NodeId n, std::string_view label);

    std::size_t node_count() const noexcept { return labels_.size(); }
    NodeId root() const noexcept { return root_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
    NodeId root_ = 0;
};

/// Checks every pattern invariant (and, with require_tree, the tree ones).
/// Throws Error naming the offending node or edge.
void validate(const StructureBuilder& b, bool require_tree);

/// Shared read-only core of Pattern and Tree.
class Structure {
public:
    std::size_t size() const noexcept { return parent_.size(); }
    NodeId root() const noexcept { return 0; }

    Label label(NodeId n) const { return labels_[check(n)]; }
    /// "*" for wildcards.
    std::string_view label_name(NodeId n) const;
    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    std::optional<std::int32_t> find_symbol(std::string_view name) const;

    std::optional<NodeId> parent(NodeId n) const {
        NodeId p = parent_[check(n)];
        return p == kNoNode ? std::nullopt : std::optional<NodeId>(p);
    }
    /// Kind of the edge entering n; Child for the root.
    EdgeKind edge_kind(NodeId n) const { return edge_kind_[check(n)]; }
    std::span<const NodeId> children(NodeId n) const {
        check(n);
        return {child_list_.data() + child_begin_[n], child_list_.data() + child_begin_[n + 1]};
    }
    /// Position of n among its parent's children; 0 for the root.
    std::uint32_t child_index(NodeId n) const { return child_index_[check(n)]; }

    std::size_t depth(NodeId n) const { return depth_[check(n)]; }
    std::size_t degree(NodeId n) const { check(n); return child_begin_[n + 1] - child_begin_[n]; }
    std::size_t subtree_size(NodeId n) const { return subtree_size_[check(n)]; }
    /// Height of the subtree rooted at n.
    std::size_t subtree_height(NodeId n) const { return subtree_height_[check(n)]; }
    /// One past the last id in the subtree of n.
    NodeId subtree_end(NodeId n) const { return n + subtree_size_[check(n)]; }
    std::size_t height() const noexcept { return subtree_height_.empty() ? 0 : subtree_height_[0]; }
    std::size_t max_degree() const noexcept { return max_degree_; }

    /// Bulk views for the table kernels, indexed by node id.
    std::span<const std::uint32_t> subtree_sizes() const noexcept { return subtree_size_; }
    std::span<const std::uint32_t> subtree_heights() const noexcept { return subtree_height_; }
    std::span<const std::uint32_t> depths() const noexcept { return depth_; }
    std::span<const NodeId> parents() const noexcept { return parent_; }

    /// Reflexive: a node is its own ancestor.
    bool is_ancestor(NodeId a, NodeId b) const {
        check(a);
        check(b);
        return a <= b && b < a + subtree_size_[a];
    }
    NodeId lca(NodeId a, NodeId b) const;

    bool has_descendant_edges() const noexcept { return desc_edge_count_ > 0; }
    bool has_wildcards() const noexcept { return wildcard_count_ > 0; }
    /// Every node has at most one child.
    bool is_path() const noexcept { return max_degree_ <= 1; }

    /// Canonical text of the subtree rooted at n: equal for two subtrees iff
    /// they are isomorphic as unordered labeled structures (edge kinds included).
    std::string canonical_form(NodeId n = 0) const;
    /// Canonical text of every subtree, indexed by node.
    std::vector<std::string> canonical_forms() const;

    StructureBuilder to_builder() const;

    friend bool isomorphic(const Structure& a, const Structure& b) {
        return a.size() == b.size() && a.canonical_form() == b.canonical_form();
    }

protected:
    Structure() = default;
    explicit Structure(const StructureBuilder& b);

    NodeId check(NodeId n) const {
        if (n >= size()) throw Error(Errc::InvalidNode, "node " + std::to_string(n) + " out of range");
        return n;
    }

private:
    std::vector<std::string> alphabet_;
    std::unordered_map<std::string, std::int32_t> symbol_index_;
    std::vector<Label> labels_;
    std::vector<NodeId> parent_;
    std::vector<EdgeKind> edge_kind_;
    std::vector<std::uint32_t> child_begin_;
    std::vector<NodeId> child_list_;
    std::vector<std::uint32_t> child_index_;
    std::vector<std::uint32_t> depth_;
    std::vector<std::uint32_t> subtree_size_;
    std::vector<std::uint32_t> subtree_height_;
    std::size_t max_degree_ = 0;
    std::size_t desc_edge_count_ = 0;
    std::size_t wildcard_count_ = 0;
};

class Tree;

/// Tree pattern: child and descendant edges, wildcard labels allowed.
class Pattern : public Structure {
public:
    explicit Pattern(const StructureBuilder& b);
    /// Every tree is a pattern.
    explicit Pattern(const Tree& t);
};

/// Tree: no descendant edges, no wildcards.
class Tree : public Structure {
public:
    explicit Tree(const StructureBuilder& b);
};

/// Translates pattern labels into the tree's alphabet once, so label checks in
/// the hot loops are integer compares.
class LabelMatcher {
public:
    LabelMatcher(const Structure& pattern, const Structure& tree);

    bool matches(NodeId pattern_node, NodeId tree_node) const {
        std::int32_t want = wanted_[pattern_node];
        return want == kAny || (want >= 0 && want == tree_labels_[tree_node]);
    }
    /// Tree symbol the pattern node requires; nullopt for wildcards.
    std::optional<std::int32_t> required_symbol(NodeId pattern_node) const {
        std::int32_t want = wanted_[pattern_node];
        return want == kAny ? std::nullopt : std::optional<std::int32_t>(want);
    }

private:
    static constexpr std::int32_t kAny = -1;
    static constexpr std::int32_t kAbsent = -2;
    std::vector<std::int32_t> wanted_;
    std::vector<std::int32_t> tree_labels_;
};

} // namespace treembed
