#pragma once

// Text formats.
//
//   tree     := label ( '(' tree (',' tree)* ')' )?
//   pattern  := step
//   step     := label pred* tail?
//   pred     := '[' ( './/' step | ('./')? step ) ']'
//   tail     := '//' step | '/' step
//   label    := [A-Za-z0-9_]+ | '*'          ('*' only in patterns)
//
// '/' steps and bare or './' predicates are child edges; '//' steps and './/'
// predicates are descendant edges. Whitespace between tokens is ignored.

#include "treembed/tree.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace treembed {

Tree parse_tree(std::string_view text);
Pattern parse_pattern(std::string_view text);

/// Canonical renderings: isomorphic structures render to the same string and
/// parse(render(x)) is isomorphic to x.
std::string render_tree(const Tree& t);
std::string render_pattern(const Pattern& p);

/// Root-to-node child indices (0-based, in stored child order).
using DeweyPath = std::vector<std::uint32_t>;

DeweyPath dewey_of(const Structure& s, NodeId n);
NodeId node_at(const Structure& s, const DeweyPath& path);
/// "ε" for the root, otherwise dot-joined indices ("0.1.0").
std::string format_dewey(const DeweyPath& path);
DeweyPath parse_dewey(std::string_view text);

struct CnfFormula {
    std::uint32_t num_vars = 0;
    /// Each clause lists nonzero signed variable indices (DIMACS convention).
    std::vector<std::vector<int>> clauses;
};

/// Standard DIMACS CNF: 'c' comment lines, "p cnf V C" header, 0-terminated
/// clauses (which may span lines). Empty clauses are rejected.
CnfFormula parse_dimacs(std::string_view text);
std::string render_dimacs(const CnfFormula& f);

} // namespace treembed
