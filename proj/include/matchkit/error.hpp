#ifndef MATCHKIT_ERROR_HPP
#define MATCHKIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace matchkit {

enum class ErrorCode {
    DuplicateLabel,
    MissingChoiceEntry,
    InvalidChoiceTable,
    InvalidPreferenceList,
    SubstitutabilityViolation,
    ConsistencyViolation,
    UnknownAgent,
    ManyToOneCapacityViolation,
    SizeLimitExceeded,
    NotSingleton,
    EmptyCoalition,
    IdenticalMatchings,
    NotABlockingPair,
    EmptyT,
    TNotInDesireSet,
    PreconditionFailed,
    InternalConsistency,
    RetriesExhausted,
    ConfigInvalid,
    SyntaxError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can dispatch on the kind rather than the message.
class Error : public std::runtime_error
{
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error
{
public:
    SyntaxError(int line, int column, const std::string& what)
        : Error(ErrorCode::SyntaxError,
                "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column)
    {
    }

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

} // namespace matchkit

#endif
