#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphcrop {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid arguments or configuration supplied by the caller.
class UsageError : public Error {
public:
    using Error::Error;
};

// A graph violates a structural invariant (edge endpoint out of range, ...).
class StructureError : public Error {
public:
    using Error::Error;
};

// Malformed input file. Carries the file and the 1-based line number.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string &what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(std::move(file)),
          line_(line) {}

    const std::string &file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace graphcrop
