#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace spd {

/// Bad input to a library call: dimension mismatch, out-of-range parameter,
/// malformed configuration.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A step-size schedule that violates one of the summability conditions.
/// The message names the violated condition.
class ScheduleError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The problem does not provide the oracle an operation needs
/// (e.g. a true gradient for the stationarity residual).
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A NaN or infinity showed up in a sample gradient or an iterate.
class NumericalFailure : public std::runtime_error {
public:
    NumericalFailure(std::uint64_t iteration, std::size_t block, const std::string& what)
        : std::runtime_error(what + " (iteration " + std::to_string(iteration) + ", block " +
                             std::to_string(block) + ")"),
          iteration_(iteration),
          block_(block) {}

    std::uint64_t iteration() const noexcept { return iteration_; }
    std::size_t block() const noexcept { return block_; }

private:
    std::uint64_t iteration_;
    std::size_t block_;
};

/// Malformed text input. Line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, std::string token, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                             ": " + what + (token.empty() ? "" : " ('" + token + "')")),
          line_(line),
          column_(column),
          token_(std::move(token)) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& token() const noexcept { return token_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string token_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spd
