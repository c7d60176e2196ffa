#pragma once

// Instance enumeration, random instances and the property suites run by
// `treembed selftest` and the acceptance binary.

#include "treembed/embedding.hpp"
#include "treembed/poly.hpp"
#include "treembed/reductions.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace treembed {

/// Every unordered tree with 1..max_nodes nodes over the alphabet, one per
/// isomorphism class.
std::vector<Tree> enumerate_trees(std::size_t max_nodes, const std::vector<std::string>& alphabet);
/// Every pattern with 1..max_nodes nodes, labels from `labels` ("*" allowed)
/// and every child/descendant edge assignment, one per isomorphism class.
std::vector<Pattern> enumerate_patterns(std::size_t max_nodes, const std::vector<std::string>& labels);
/// Height <= 1 patterns with at most max_children root children.
std::vector<Pattern> enumerate_height_one_patterns(std::size_t max_children, const std::vector<std::string>& labels);

/// Random recursive tree: node i hangs below a uniform node among 0..i-1.
Tree random_tree(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& alphabet);
Pattern random_pattern(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels,
                       double desc_probability);

/// Pattern read off t: an lca-closed node set of exactly `nodes` tree nodes
/// (fewer if t is smaller) containing the root, so the identity is an lca
/// embedding. Edges that skip tree levels become descendant edges; the others
/// do with probability desc_probability.
Pattern sample_pattern(std::mt19937_64& rng, const Tree& t, std::size_t nodes, double desc_probability,
                       double wildcard_probability);
/// Pattern on a random node set of t containing the root, each node having at
/// most max_degree chosen nodes directly below it. The identity is an anc
/// embedding. Edges that skip tree levels are descendant edges. May come out
/// smaller than requested when no such set was found (a degree-1 pattern can
/// be no longer than t is deep).
Pattern sample_anc_pattern(std::mt19937_64& rng, const Tree& t, std::size_t nodes, std::size_t max_degree,
                           double desc_probability, double wildcard_probability);
/// Random pattern whose nodes have at most max_degree children.
Pattern random_bounded_pattern(std::mt19937_64& rng, std::size_t nodes, const std::vector<std::string>& labels,
                               double desc_probability, std::size_t max_degree);

/// Random CNFs with clause width 1..3: per_cell formulas for every
/// (vars, clauses) in [1, max_vars] x [1, max_clauses], then a few fixed
/// unsatisfiable ones.
std::vector<CnfFormula> cnf_suite(std::uint64_t seed, std::uint32_t max_vars = 4, std::uint32_t max_clauses = 4,
                                  std::size_t per_cell = 40);

/// (x1 | !x3) & (x1 | !x2 | x3) & (!x1 | !x2)
CnfFormula sample_formula();

struct SuiteReport {
    explicit SuiteReport(std::string suite_name = {}) : name(std::move(suite_name)) {}

    std::string name;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::uint64_t skipped = 0;
    /// Yes-verdict witnesses passed to verify, and how many it rejected
    /// (those count as failures too).
    std::uint64_t witnesses_checked = 0;
    std::uint64_t witness_failures = 0;
    /// First failures, one line each.
    std::vector<std::string> details;
    std::string note;

    bool passed() const { return failures == 0; }
    void fail(std::string detail);
};

struct SelftestOptions {
    std::size_t max_tree_nodes = 5;
    std::size_t max_pattern_nodes = 4;
    std::uint64_t seed = 20100301;
    std::size_t random_instances = 1000;
    std::size_t random_max_tree_nodes = 30;
    std::size_t random_max_pattern_nodes = 8;
    std::uint32_t max_cnf_vars = 4;
    std::uint32_t max_cnf_clauses = 4;
    /// Bound on vars and clauses for the gadget reductions.
    std::uint32_t max_gadget_cnf = 2;
    std::size_t cnf_per_cell = 40;
    /// Use the as-printed counting inequality in the height-one suite and
    /// report its disagreements as failures.
    bool as_printed_counting = false;
    SearchConfig search;
};

/// oracle-equivalence, hierarchy, collapse and path-pattern suites over the
/// exhaustive pairs (plus random instances for all but the first).
std::vector<SuiteReport> run_structural_suites(const SelftestOptions& opts);
/// Solver verdicts on every generated reduction against sat_brute_force.
SuiteReport run_sat_suite(const SelftestOptions& opts);
/// Counting, matching and oracle on every height-one instance.
SuiteReport run_height_one_suite(const SelftestOptions& opts);

std::vector<SuiteReport> run_selftest(const SelftestOptions& opts);

} // namespace treembed
