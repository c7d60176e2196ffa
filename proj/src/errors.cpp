#include "treembed/errors.hpp"

namespace treembed {

std::string_view errc_name(Errc code) noexcept {
    switch (code) {
    case Errc::CycleDetected: return "CycleDetected";
    case Errc::MultipleParents: return "MultipleParents";
    case Errc::DisjointnessViolation: return "DisjointnessViolation";
    case Errc::WildcardInTree: return "WildcardInTree";
    case Errc::DescEdgeInTree: return "DescEdgeInTree";
    case Errc::MissingParent: return "MissingParent";
    case Errc::EmptyStructure: return "EmptyStructure";
    case Errc::InvalidNode: return "InvalidNode";
    case Errc::InvalidLabel: return "InvalidLabel";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::PartialMapping: return "PartialMapping";
    case Errc::ForeignNode: return "ForeignNode";
    case Errc::InstanceTooLarge: return "InstanceTooLarge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::HeightTooLarge: return "HeightTooLarge";
    case Errc::TooManyVariables: return "TooManyVariables";
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    }
    return "Unknown";
}

} // namespace treembed
