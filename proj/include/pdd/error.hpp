#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace pdd {

// Base of every error raised by the library. Input errors may carry the
// 1-based line of the offending record when they come from a file.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(line ? what + " (line " + std::to_string(*line) + ")" : what),
          line_(line) {}

    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::optional<std::size_t> line_;
};

class NonPositiveLength : public Error {
    using Error::Error;
};

class DisconnectedGraph : public Error {
    using Error::Error;
};

class UnknownNode : public Error {
    using Error::Error;
};

class NonPositiveStep : public Error {
    using Error::Error;
};

class EmptyBasepointSet : public Error {
    using Error::Error;
};

class ParseError : public Error {
    using Error::Error;
};

// Precondition violations not covered by a more specific type.
class InvalidArgument : public Error {
    using Error::Error;
};

} // namespace pdd
