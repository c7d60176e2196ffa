#pragma once

// SAT reductions to the embedding problems, the T^k_s gadget and the degree
// reduction, plus a brute-force SAT oracle to check them against.

#include "treembed/text_io.hpp"
#include "treembed/tree.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace treembed {

enum class ReductionKind : std::uint8_t { Inj, Anc, InjH2, InjWc, InjNowc, AncWc };

inline constexpr std::array<ReductionKind, 6> kAllReductions{ReductionKind::Inj,   ReductionKind::Anc,
                                                             ReductionKind::InjH2, ReductionKind::InjWc,
                                                             ReductionKind::InjNowc, ReductionKind::AncWc};

/// "inj", "anc", "inj-h2", "inj-wc", "inj-nowc", "anc-wc".
std::string_view reduction_name(ReductionKind kind) noexcept;
std::optional<ReductionKind> parse_reduction(std::string_view name) noexcept;
/// True for the reductions that target anc embeddings.
bool targets_anc(ReductionKind kind) noexcept;

struct Instance {
    Tree tree;
    Pattern pattern;
};

inline constexpr std::uint32_t kMaxBruteForceVars = 20;

/// Throws TooManyVariables above kMaxBruteForceVars. A formula with an empty
/// clause is unsatisfiable.
bool sat_brute_force(const CnfFormula& f);

/// r(X_1, X̄_1, ..., X_n, X̄_n), each X a chain x_i(π_1(...π_k)) where π_j is
/// c_j when clause j holds the literal and "bot" otherwise; pattern
/// r[.//x_i/*/.../*]...[.//c_j]...
Instance gen_inj_reduction(const CnfFormula& f);
/// r(x_i(c_j...), ...) with one x_i child per literal; pattern r[x_i]...[.//c_j]...
Instance gen_anc_reduction(const CnfFormula& f);
/// Height-2 pattern variant for weakly-injective embeddings.
Instance gen_inj_h2_reduction(const CnfFormula& f);
/// gen_inj_h2_reduction with labeled leaves replaced by T^k_s gadgets; the
/// tree is all "a", the pattern all "*".
Instance gen_inj_wc_reduction(const CnfFormula& f);
/// As gen_inj_wc_reduction, but the pattern is all "a".
Instance gen_inj_nowc_reduction(const CnfFormula& f);
/// gen_anc_reduction with an extra x_i leaf below every literal node, then
/// gadgets for the leaves; tree all "a", pattern all "*".
Instance gen_anc_wc_reduction(const CnfFormula& f);

Instance generate(ReductionKind kind, const CnfFormula& f);

/// T^k_s: two hubs with k+3 leaves each, joined by a path of s edges; every
/// node labeled "a". Throws InvalidSize when s < 1.
Tree gadget_t(std::size_t k, std::size_t s);
inline std::size_t gadget_size(std::size_t k, std::size_t s) { return 2 * (k + 4) + (s - 1); }

/// p = r[.//p_1]...[.//p_m], t = r(t_1, ..., t_k) become
/// p' = A_1[.//p_1]/.../A_m[.//p_m], t' = A_1(...A_m(t_1, ..., t_k)) with
/// fresh labels A_i. Throws ShapeMismatch when the pattern root has a child
/// edge or its label cannot match the tree root.
Instance reduce_degree(const Tree& t, const Pattern& p);

} // namespace treembed
