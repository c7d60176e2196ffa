#pragma once

// Polynomial deciders and the dispatcher that picks the cheapest sound one.
//
// Each checker fills a table Φ with one bitset row per pattern node, bottom
// up: bit n of row m is set iff t|n embeds p|m under the checker's kind. The
// rows are filled by OpenMP-parallel kernels; the `reference` namespace keeps
// plain serial versions that tests and benchmarks compare against.

#include "treembed/bitset.hpp"
#include "treembed/embedding.hpp"
#include "treembed/exact.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace treembed {

struct PhiTable {
    std::vector<Bitset> rows;

    const Bitset& operator[](NodeId m) const { return rows[m]; }
    friend bool operator==(const PhiTable&, const PhiTable&) = default;
};

struct AncLimits {
    /// Tuple-search steps allowed for a single (m, n) cell.
    std::uint64_t max_tuple_steps = 10'000'000;
};

PhiTable std_table(const Tree& t, const Pattern& p);
PhiTable lca_table(const Tree& t, const Pattern& p);
/// Throws BudgetExceeded when some cell needs more than limits.max_tuple_steps.
PhiTable anc_table(const Tree& t, const Pattern& p, AncLimits limits = {});

namespace reference {
PhiTable std_table(const Tree& t, const Pattern& p);
PhiTable lca_table(const Tree& t, const Pattern& p);
PhiTable anc_table(const Tree& t, const Pattern& p);
} // namespace reference

CheckResult check_std(const Tree& t, const Pattern& p);
CheckResult check_lca(const Tree& t, const Pattern& p);
CheckResult check_anc_bounded(const Tree& t, const Pattern& p, AncLimits limits = {});

/// Worst-case tuple-search steps for the whole table: the sum over pattern
/// nodes m of |N_t|^(deg(m)+1), saturating.
std::uint64_t anc_bounded_cost(const Tree& t, const Pattern& p);

/// Label and depth statistics of a height-1 instance. Labels are the union of
/// both alphabets, tree symbols first.
struct HeightOneCounts {
    std::vector<std::string> labels;
    std::vector<std::int64_t> p_child, p_desc;
    std::int64_t p_child_wild = 0;
    std::int64_t p_desc_wild = 0;
    std::vector<std::int64_t> t_depth1, t_depth_ge2, t_depth_ge1;
    bool roots_compatible = false;
};

HeightOneCounts count_height_one(const Tree& t, const Pattern& p);

enum class CountingReading : std::uint8_t {
    /// Overflowing descendant children consume depth-1 nodes:
    /// p*| <= sum_a (t_a=1 - p_a| - max(p_a|| - t_a>=2, 0)).
    Corrected,
    /// Same inequality with min(p_a|| - t_a>=2, 0); known to accept
    /// non-embeddable instances. Kept for comparison only.
    AsPrinted,
};

/// The counting inequalities, root compatibility included.
bool height_one_counting(const HeightOneCounts& c, CountingReading reading = CountingReading::Corrected);
/// Perfect matching of root_p's children into non-root tree nodes; fills
/// witness when given and the answer is yes.
bool height_one_matching(const Tree& t, const Pattern& p, Embedding* witness = nullptr);

/// Throws HeightTooLarge when height(p) > 1, and std::logic_error if the
/// counting and matching formulations disagree.
CheckResult check_inj_height1(const Tree& t, const Pattern& p);

struct DispatchOptions {
    SearchConfig search;
    /// check_anc_bounded is used only when anc_bounded_cost stays within this.
    std::uint64_t anc_cost_budget = 10'000'000;
};

/// Routes to the cheapest sound algorithm for the fragment the instance
/// falls in. The result names the algorithm that produced the verdict.
CheckResult dispatch(const Tree& t, const Pattern& p, EmbeddingKind kind, const DispatchOptions& opts = {});

} // namespace treembed
