#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace psp {

// Malformed text input; carries the 1-based line where parsing failed.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& msg)
        : std::runtime_error(path + ":" + std::to_string(line) + ": " + msg), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A graph violates a structural invariant (negative weight, self-loop,
// duplicate edge, asymmetric adjacency).
class GraphInvariantError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened, read, written, or is truncated.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Oracle file was written by an incompatible format version.
class FormatVersionError : public IoError {
public:
    using IoError::IoError;
};

// Oracle file checksum does not match its contents.
class ChecksumError : public IoError {
public:
    using IoError::IoError;
};

}  // namespace psp
