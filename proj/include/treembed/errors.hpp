#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treembed {

enum class Errc {
    // structure validation / queries
    CycleDetected,
    MultipleParents,
    DisjointnessViolation,
    WildcardInTree,
    DescEdgeInTree,
    MissingParent,
    EmptyStructure,
    InvalidNode,
    InvalidLabel,
    // text-io
    SyntaxError,
    InvalidPath,
    // embeddings
    PartialMapping,
    ForeignNode,
    InstanceTooLarge,
    BudgetExceeded,
    HeightTooLarge,
    // generators
    TooManyVariables,
    InvalidSize,
    ShapeMismatch,
};

std::string_view errc_name(Errc code) noexcept;

/// Base exception for everything the library reports. `code()` is stable;
/// the message is for humans.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

/// Parse failure with the byte offset where the input stopped making sense.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t position, const std::string& expectation)
        : Error(Errc::SyntaxError,
                "at position " + std::to_string(position) + ": " + expectation),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class BudgetExceeded : public Error {
public:
    explicit BudgetExceeded(std::uint64_t estimated_cost)
        : Error(Errc::BudgetExceeded,
                "estimated cost " + std::to_string(estimated_cost) + " exceeds budget"),
          estimated_cost_(estimated_cost) {}

    std::uint64_t estimated_cost() const noexcept { return estimated_cost_; }

private:
    std::uint64_t estimated_cost_;
};

} // namespace treembed
