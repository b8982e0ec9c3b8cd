#include "ebn/error.hpp"

namespace ebn {

const char* error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::ParallelEdge: return "ParallelEdge";
    case ErrorCode::DirectedCycle: return "DirectedCycle";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidName: return "InvalidName";
    case ErrorCode::InvalidTrail: return "InvalidTrail";
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::UniverseTooLarge: return "UniverseTooLarge";
    case ErrorCode::InvalidStatement: return "InvalidStatement";
    case ErrorCode::HasBidirectedEdge: return "HasBidirectedEdge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::EmptyKeepSet: return "EmptyKeepSet";
    case ErrorCode::BadTable: return "BadTable";
    case ErrorCode::RetriesExhausted: return "RetriesExhausted";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::StatementNotInModel: return "StatementNotInModel";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::OrientationConflict: return "OrientationConflict";
    case ErrorCode::InvalidConstraint: return "InvalidConstraint";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Error";
}

} // namespace ebn
