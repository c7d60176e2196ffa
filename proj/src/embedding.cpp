#include "treembed/embedding.hpp"

#include <sstream>

namespace treembed {

std::string_view kind_name(EmbeddingKind kind) noexcept {
    switch (kind) {
    case EmbeddingKind::Std: return "std";
    case EmbeddingKind::Inj: return "inj";
    case EmbeddingKind::Anc: return "anc";
    case EmbeddingKind::Lca: return "lca";
    }
    return "?";
}

std::optional<EmbeddingKind> parse_kind(std::string_view name) noexcept {
    for (auto k : kAllKinds)
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

std::string_view verdict_name(Verdict v) noexcept {
    switch (v) {
    case Verdict::No: return "no";
    case Verdict::Yes: return "yes";
    case Verdict::Unknown: return "unknown";
    }
    return "?";
}

namespace {

bool edge_ok(const Tree& t, const Pattern& p, NodeId m, NodeId parent_image, NodeId n) {
    if (p.edge_kind(m) == EdgeKind::Child) return t.parent(n) == parent_image;
    return n != parent_image && t.is_ancestor(parent_image, n);
}

} // namespace

bool verify(const Tree& t, const Pattern& p, const Embedding& h, EmbeddingKind kind) {
    if (h.image.size() != p.size())
        throw Error(Errc::PartialMapping, "mapping covers " + std::to_string(h.image.size()) + " of " +
                                              std::to_string(p.size()) + " pattern nodes");
    for (NodeId m = 0; m < p.size(); ++m) {
        if (h.image[m] == kNoNode) throw Error(Errc::PartialMapping, "pattern node " + std::to_string(m) + " unmapped");
        if (h.image[m] >= t.size())
            throw Error(Errc::ForeignNode, "pattern node " + std::to_string(m) + " maps to " +
                                               std::to_string(h.image[m]) + ", not a tree node");
    }

    // 1. root to root
    if (h.image[p.root()] != t.root()) return false;
    LabelMatcher labels(p, t);
    for (NodeId m = 0; m < p.size(); ++m) {
        // 4. labels
        if (!labels.matches(m, h.image[m])) return false;
        // 2./3. child edges to tree edges, descendant edges to nonempty paths
        if (auto pm = p.parent(m); pm && !edge_ok(t, p, m, h.image[*pm], h.image[m])) return false;
    }

    switch (kind) {
    case EmbeddingKind::Std: return true;
    case EmbeddingKind::Inj:
        for (NodeId a = 0; a < p.size(); ++a)
            for (NodeId b = a + 1; b < p.size(); ++b)
                if (h.image[a] == h.image[b]) return false;
        return true;
    case EmbeddingKind::Anc:
        for (NodeId a = 0; a < p.size(); ++a)
            for (NodeId b = 0; b < p.size(); ++b)
                if (t.is_ancestor(h.image[a], h.image[b]) != p.is_ancestor(a, b)) return false;
        return true;
    case EmbeddingKind::Lca:
        for (NodeId a = 0; a < p.size(); ++a)
            for (NodeId b = a; b < p.size(); ++b)
                if (t.lca(h.image[a], h.image[b]) != h.image[p.lca(a, b)]) return false;
        return true;
    }
    return false;
}

namespace {

class BruteForce {
public:
    BruteForce(const Tree& t, const Pattern& p, EmbeddingKind kind)
        : t_(t), p_(p), kind_(kind), labels_(p, t), h_(p.size(), kNoNode) {}

    bool run() { return assign(0); }
    const std::vector<NodeId>& mapping() const { return h_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    bool assign(NodeId m) {
        if (m == p_.size()) return true;
        for (NodeId n = 0; n < t_.size(); ++n) {
            if (!admissible(m, n)) continue;
            h_[m] = n;
            ++nodes_;
            if (assign(m + 1)) return true;
            h_[m] = kNoNode;
        }
        return false;
    }

    // Pattern nodes are assigned in preorder, so every ancestor of m (and every
    // lca of m with an earlier node) already has an image.
    bool admissible(NodeId m, NodeId n) const {
        if (!labels_.matches(m, n)) return false;
        if (auto pm = p_.parent(m)) {
            if (!edge_ok(t_, p_, m, h_[*pm], n)) return false;
        } else if (n != t_.root()) {
            return false;
        }
        for (NodeId prev = 0; prev < m; ++prev) {
            NodeId img = h_[prev];
            switch (kind_) {
            case EmbeddingKind::Std: break;
            case EmbeddingKind::Inj:
                if (img == n) return false;
                break;
            case EmbeddingKind::Anc:
                if (t_.is_ancestor(img, n) != p_.is_ancestor(prev, m)) return false;
                if (t_.is_ancestor(n, img) != p_.is_ancestor(m, prev)) return false;
                break;
            case EmbeddingKind::Lca:
                if (t_.lca(img, n) != h_[p_.lca(prev, m)]) return false;
                break;
            }
        }
        return true;
    }

    const Tree& t_;
    const Pattern& p_;
    EmbeddingKind kind_;
    LabelMatcher labels_;
    std::vector<NodeId> h_;
    std::uint64_t nodes_ = 0;
};

} // namespace

CheckResult brute_force(const Tree& t, const Pattern& p, EmbeddingKind kind, BruteForceLimits limits) {
    if (limits.enforce && (p.size() > limits.max_pattern_nodes || t.size() > limits.max_tree_nodes))
        throw Error(Errc::InstanceTooLarge, "pattern " + std::to_string(p.size()) + " nodes, tree " +
                                                std::to_string(t.size()) + " nodes");
    auto start = std::chrono::steady_clock::now();
    BruteForce search(t, p, kind);
    CheckResult r;
    r.algorithm = "brute_force";
    if (search.run()) {
        r.verdict = Verdict::Yes;
        r.witness = Embedding{search.mapping()};
    }
    r.stats.nodes_explored = search.nodes();
    r.stats.elapsed = std::chrono::steady_clock::now() - start;
    return r;
}

std::string format_witness(const Tree& t, const Pattern& p, const Embedding& h) {
    std::string out;
    for (NodeId m = 0; m < p.size(); ++m) {
        out += format_dewey(dewey_of(p, m));
        out += " -> ";
        out += format_dewey(dewey_of(t, h.image.at(m)));
        out += '\n';
    }
    return out;
}

Embedding parse_witness(const Tree& t, const Pattern& p, std::string_view text) {
    Embedding h{std::vector<NodeId>(p.size(), kNoNode)};
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto arrow = line.find(" -> ");
        if (arrow == std::string::npos) throw SyntaxError(0, "expected '<pattern> -> <tree>'");
        NodeId m = node_at(p, parse_dewey(std::string_view(line).substr(0, arrow)));
        NodeId n = node_at(t, parse_dewey(std::string_view(line).substr(arrow + 4)));
        h.image[m] = n;
    }
    return h;
}

} // namespace treembed
