/**@file   errors.hpp
 * @brief  Exception types shared by all modules
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace deltadb {

/// Precondition violated by the caller (bad dimensions, empty input, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError() : std::runtime_error("matrix is singular") {}
};

/// A work or size cap was exceeded; the message carries the estimate.
class CapExceededError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError() : std::runtime_error("Infeasible") {}
};

class UnboundedError : public std::runtime_error {
public:
    UnboundedError() : std::runtime_error("Unbounded") {}
};

/// Instance or matrix file could not be parsed. `line` is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::string field = {})
        : std::runtime_error(format(what, line, field)), line_(line), field_(std::move(field)) {}

    std::size_t line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    static std::string format(const std::string& what, std::size_t line, const std::string& field) {
        std::string out = what;
        if (!field.empty())
            out += " (field '" + field + "')";
        if (line > 0)
            out += " at line " + std::to_string(line);
        return out;
    }

    std::size_t line_;
    std::string field_;
};

/// A structural invariant of a model does not hold; `invariant` names it.
class InvariantViolation : public std::runtime_error {
public:
    InvariantViolation(std::string invariant, const std::string& detail)
        : std::runtime_error(invariant + ": " + detail), invariant_(std::move(invariant)) {}

    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

}  // namespace deltadb
