#pragma once

#include "treembed/text_io.hpp"
#include "treembed/tree.hpp"

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treembed {

/// Ordered by strength: every lca embedding is anc, every anc is inj, every
/// inj is std.
enum class EmbeddingKind : std::uint8_t { Std, Inj, Anc, Lca };

inline constexpr std::array<EmbeddingKind, 4> kAllKinds{EmbeddingKind::Std, EmbeddingKind::Inj,
                                                       EmbeddingKind::Anc, EmbeddingKind::Lca};

std::string_view kind_name(EmbeddingKind kind) noexcept;
std::optional<EmbeddingKind> parse_kind(std::string_view name) noexcept;
inline bool is_injective(EmbeddingKind kind) noexcept { return kind != EmbeddingKind::Std; }

/// h : N_p -> N_t, indexed by pattern node.
struct Embedding {
    std::vector<NodeId> image;

    friend bool operator==(const Embedding&, const Embedding&) = default;
};

enum class Verdict : std::uint8_t { No, Yes, Unknown };

std::string_view verdict_name(Verdict v) noexcept;

struct SearchStats {
    std::uint64_t nodes_explored = 0;
    std::chrono::nanoseconds elapsed{0};
};

struct CheckResult {
    Verdict verdict = Verdict::No;
    std::optional<Embedding> witness;
    std::string algorithm;
    SearchStats stats;

    bool yes() const noexcept { return verdict == Verdict::Yes; }
};

/// Conditions 1-4 always; additionally injectivity (Inj), two-way ancestor
/// preservation (Anc) or lca commutation (Lca). Throws PartialMapping when h
/// is not total over the pattern and ForeignNode when an image is not a tree
/// node.
bool verify(const Tree& t, const Pattern& p, const Embedding& h, EmbeddingKind kind);

struct BruteForceLimits {
    std::size_t max_pattern_nodes = 8;
    std::size_t max_tree_nodes = 12;
    bool enforce = true;
};

/// Exhaustive search over all mappings, pattern nodes in preorder and tree
/// nodes in Dewey order; the witness is the first mapping found. Throws
/// InstanceTooLarge past the limits unless limits.enforce is false.
CheckResult brute_force(const Tree& t, const Pattern& p, EmbeddingKind kind, BruteForceLimits limits = {});

/// One "<patternDewey> -> <treeDewey>" line per pattern node, preorder.
std::string format_witness(const Tree& t, const Pattern& p, const Embedding& h);
Embedding parse_witness(const Tree& t, const Pattern& p, std::string_view text);

} // namespace treembed
