#pragma once

#include <stdexcept>
#include <string>

namespace itpn {

/// A caller broke an operation's precondition (firing a disabled
/// transition, reading a missing history entry, negating infinity, ...).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The polyhedral oracle refused a system larger than its budget.
class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Model text could not be parsed.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

}  // namespace itpn
