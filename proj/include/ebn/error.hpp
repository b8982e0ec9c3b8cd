#pragma once

#include <stdexcept>
#include <string>

namespace ebn {

// Every recoverable failure in the library is thrown as an Error carrying a
// machine-checkable code.  The CLI maps codes onto its exit-code taxonomy.
enum class ErrorCode {
    SelfLoop,
    ParallelEdge,
    DirectedCycle,
    UnknownVertex,
    InvalidName,
    InvalidTrail,
    UniverseMismatch,
    UniverseTooLarge,
    InvalidStatement,
    HasBidirectedEdge,
    BudgetExceeded,
    VariableMismatch,
    EmptyKeepSet,
    BadTable,
    RetriesExhausted,
    NotATree,
    InvalidK,
    StatementNotInModel,
    NotPositive,
    OrientationConflict,
    InvalidConstraint,
    ParseError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace ebn
