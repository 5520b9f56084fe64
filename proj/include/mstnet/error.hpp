/**
 * @file error.hpp
 * @brief Exception types shared by the mstnet pipeline stages.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mstnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or semantically invalid input row.
class ParseError : public Error {
public:
    ParseError(std::size_t row, const std::string& message)
        : Error("row " + std::to_string(row) + ": " + message), row_(row) {}

    /// 1-based line number in the source stream (header is row 1).
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// A precondition on an operation's arguments does not hold.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A numerical self-check failed (residual over tolerance, singular system).
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace mstnet
