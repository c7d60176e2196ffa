#include "treembed/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <limits>

namespace treembed {

namespace {

constexpr std::size_t kMaxPredicateNesting = 2048;
constexpr std::string_view kEpsilon = "\xCE\xB5"; // ε

bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    void skip_ws() {
        while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
    }
    bool at_end() {
        skip_ws();
        return pos_ == text_.size();
    }
    bool peek(std::string_view token) {
        skip_ws();
        return text_.substr(pos_, token.size()) == token;
    }
    bool consume(std::string_view token) {
        if (!peek(token)) return false;
        pos_ += token.size();
        return true;
    }
    void expect(std::string_view token) {
        if (!consume(token)) fail("expected '" + std::string(token) + "'");
    }
    /// Identifier, or "*" when allow_wildcard.
    std::string label(bool allow_wildcard, bool tree_context) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '*') {
            if (tree_context)
                throw Error(Errc::WildcardInTree,
                            "wildcard '*' at position " + std::to_string(pos_) + " is not allowed in a tree");
            if (allow_wildcard) {
                ++pos_;
                return std::string(kWildcardText);
            }
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
        if (start == pos_) fail(allow_wildcard ? "expected a label or '*'" : "expected a label");
        return std::string(text_.substr(start, pos_ - start));
    }
    [[noreturn]] void fail(const std::string& expectation) const { throw SyntaxError(pos_, expectation); }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

void expect_end(Cursor& cur, std::string_view what) {
    if (!cur.at_end()) cur.fail("end of input after " + std::string(what));
}

} // namespace

Tree parse_tree(std::string_view text) {
    Cursor cur(text);
    StructureBuilder b;
    std::vector<NodeId> open;
    while (true) {
        // A term starts here.
        NodeId n = b.add_node(cur.label(false, true));
        if (!open.empty()) b.add_edge(open.back(), n);
        if (cur.consume("(")) {
            open.push_back(n);
            continue;
        }
        // Close finished argument lists until another sibling starts.
        bool next_sibling = false;
        while (!open.empty()) {
            if (cur.consume(",")) {
                next_sibling = true;
                break;
            }
            if (!cur.consume(")")) cur.fail("expected ',' or ')'");
            open.pop_back();
        }
        if (!next_sibling) break;
    }
    expect_end(cur, "tree");
    return Tree(b);
}

Pattern parse_pattern(std::string_view text) {
    Cursor cur(text);
    StructureBuilder b;

    // Parses one step chain below `parent` and returns when the chain ends.
    auto parse_chain = [&](auto& self, NodeId parent, EdgeKind kind, std::size_t nesting) -> void {
        if (nesting > kMaxPredicateNesting) cur.fail("predicate nesting too deep");
        while (true) {
            NodeId n = b.add_node(cur.label(true, false));
            if (parent != kNoNode) b.add_edge(parent, n, kind);
            while (cur.consume("[")) {
                EdgeKind pk = EdgeKind::Child;
                if (cur.consume(".//"))
                    pk = EdgeKind::Descendant;
                else
                    cur.consume("./");
                self(self, n, pk, nesting + 1);
                cur.expect("]");
            }
            if (cur.consume("//"))
                kind = EdgeKind::Descendant;
            else if (cur.consume("/"))
                kind = EdgeKind::Child;
            else
                return;
            parent = n;
        }
    };
    parse_chain(parse_chain, kNoNode, EdgeKind::Child, 0);
    expect_end(cur, "pattern");
    return Pattern(b);
}

std::string render_tree(const Tree& t) {
    std::vector<std::string> out(t.size());
    std::vector<std::string> parts;
    for (NodeId n = static_cast<NodeId>(t.size()); n-- > 0;) {
        std::string s(t.label_name(n));
        auto kids = t.children(n);
        if (!kids.empty()) {
            parts.clear();
            for (NodeId c : kids) parts.push_back(std::move(out[c]));
            std::sort(parts.begin(), parts.end());
            s += '(';
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ',';
                s += parts[i];
            }
            s += ')';
        }
        out[n] = std::move(s);
    }
    return out[0];
}

std::string render_pattern(const Pattern& p) {
    // Children are sorted by "/x" or "//x"; the smallest becomes the tail step
    // and the rest become predicates, so f/a[.//b/c]//b renders as itself.
    std::vector<std::string> out(p.size());
    std::vector<std::pair<std::string, NodeId>> keyed;
    for (NodeId n = static_cast<NodeId>(p.size()); n-- > 0;) {
        std::string s(p.label_name(n));
        auto kids = p.children(n);
        if (!kids.empty()) {
            keyed.clear();
            for (NodeId c : kids)
                keyed.emplace_back((p.edge_kind(c) == EdgeKind::Descendant ? "//" : "/") + out[c], c);
            std::sort(keyed.begin(), keyed.end());
            for (std::size_t i = 1; i < keyed.size(); ++i) {
                NodeId c = keyed[i].second;
                s += p.edge_kind(c) == EdgeKind::Descendant ? "[.//" : "[";
                s += out[c];
                s += ']';
            }
            s += keyed[0].first;
        }
        out[n] = std::move(s);
    }
    return out[0];
}

DeweyPath dewey_of(const Structure& s, NodeId n) {
    DeweyPath path;
    for (NodeId cur = n; cur != s.root(); cur = *s.parent(cur))
        path.push_back(s.child_index(cur));
    std::reverse(path.begin(), path.end());
    return path;
}

NodeId node_at(const Structure& s, const DeweyPath& path) {
    NodeId n = s.root();
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto kids = s.children(n);
        if (path[i] >= kids.size())
            throw Error(Errc::InvalidPath, "index " + std::to_string(path[i]) + " at step " + std::to_string(i) +
                                               " exceeds degree " + std::to_string(kids.size()));
        n = kids[path[i]];
    }
    return n;
}

std::string format_dewey(const DeweyPath& path) {
    if (path.empty()) return std::string(kEpsilon);
    std::string s;
    for (std::size_t i = 0; i < path.size(); ++i) {
        if (i) s += '.';
        s += std::to_string(path[i]);
    }
    return s;
}

DeweyPath parse_dewey(std::string_view text) {
    if (text == kEpsilon) return {};
    DeweyPath path;
    std::size_t pos = 0;
    while (true) {
        std::uint32_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
        if (ec != std::errc{} || ptr == text.data() + pos) throw SyntaxError(pos, "expected a child index");
        path.push_back(v);
        pos = static_cast<std::size_t>(ptr - text.data());
        if (pos == text.size()) return path;
        if (text[pos] != '.') throw SyntaxError(pos, "expected '.'");
        ++pos;
    }
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::vector<int> clause;
    std::size_t pos = 0;

    auto skip_line = [&] {
        while (pos < text.size() && text[pos] != '\n') ++pos;
    };
    auto read_token = [&](std::size_t& start) {
        while (pos < text.size() && text[pos] != '\n' && is_space(text[pos])) ++pos;
        start = pos;
        while (pos < text.size() && !is_space(text[pos])) ++pos;
        return text.substr(start, pos - start);
    };
    auto read_number = [&](auto& out) {
        std::size_t start = 0;
        auto tok = read_token(start);
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            throw SyntaxError(start, "expected an integer");
    };

    while (pos < text.size()) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos >= text.size()) break;
        char c = text[pos];
        if (c == 'c') {
            skip_line();
            continue;
        }
        if (c == '%') break;
        if (c == 'p') {
            if (have_header) throw SyntaxError(pos, "duplicate 'p' header");
            ++pos;
            std::size_t start = 0;
            if (read_token(start) != "cnf") throw SyntaxError(start, "expected 'cnf' in header");
            long long vars = 0;
            long long clauses = 0;
            read_number(vars);
            read_number(clauses);
            if (vars < 0 || clauses < 0 || vars > std::numeric_limits<int>::max())
                throw SyntaxError(pos, "header counts out of range");
            f.num_vars = static_cast<std::uint32_t>(vars);
            declared_clauses = static_cast<std::size_t>(clauses);
            have_header = true;
            continue;
        }
        if (!have_header) throw SyntaxError(pos, "expected 'p cnf' header before clauses");
        std::size_t start = pos;
        long long lit = 0;
        read_number(lit);
        if (lit == 0) {
            if (clause.empty()) throw SyntaxError(start, "empty clause");
            f.clauses.push_back(std::move(clause));
            clause.clear();
        } else {
            if (std::llabs(lit) > static_cast<long long>(f.num_vars))
                throw SyntaxError(start, "literal exceeds declared variable count");
            clause.push_back(static_cast<int>(lit));
        }
    }
    if (!have_header) throw SyntaxError(pos, "missing 'p cnf' header");
    if (!clause.empty()) throw SyntaxError(pos, "last clause is not terminated by 0");
    if (f.clauses.size() != declared_clauses)
        throw SyntaxError(pos, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                   std::to_string(f.clauses.size()));
    return f;
}

std::string render_dimacs(const CnfFormula& f) {
    std::string s = "p cnf " + std::to_string(f.num_vars) + " " + std::to_string(f.clauses.size()) + "\n";
    for (const auto& cl : f.clauses) {
        for (int lit : cl) s += std::to_string(lit) + " ";
        s += "0\n";
    }
    return s;
}

} // namespace treembed
