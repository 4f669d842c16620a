#pragma once

#include <stdexcept>
#include <string>

namespace wcon {

/// Carrier value outside the declared semiring domain.
class invalid_value_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lexical or syntactic error with a source position.
class parse_error : public std::runtime_error {
public:
    parse_error(std::string message, int line, int column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

/// Semantic error in a model: unresolved names, reserved identifiers,
/// duplicate declarations, rejected semiring.
class model_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Evaluation-time error: unknown port, missing weight, port set too large.
class eval_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Context substitution error: hole not found or not unique.
class context_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace wcon
