#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rpaclone {

/// Base of every error raised by the library. The CLI maps these onto exit
/// statuses: UsageError -> 2, everything else -> 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed XML / JSON / CSV input.
class ParseError : public Error {
public:
    ParseError(std::string source, std::size_t byte_offset, const std::string& what);

    const std::string& source() const noexcept { return source_; }
    std::size_t byte_offset() const noexcept { return byte_offset_; }
    /// Message without the source name, e.g. "parse error at byte offset 4: ...".
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string source_;
    std::size_t byte_offset_;
    std::string detail_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Tabular input is missing a mapped column or holds an unusable row.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// A dictionary violated one or more invariants; every violation is kept.
class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<std::string> violations);

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

class EmptyCorpusError : public Error {
public:
    EmptyCorpusError() : Error("empty corpus") {}
};

/// Operation precondition failed (e.g. too few processes to compare).
class PreconditionError : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace rpaclone
