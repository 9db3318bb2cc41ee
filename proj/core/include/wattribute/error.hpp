#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace wattribute {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or argument violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed trace or config input. line() is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A telemetry source could not be opened or stopped producing.
class SourceError : public Error {
public:
    SourceError(const std::string& what, bool retryable) : Error(what), retryable_(retryable) {}

    bool retryable() const noexcept { return retryable_; }

private:
    bool retryable_;
};

/// A single power endpoint request failed.
class FetchError : public Error {
public:
    enum class Kind { connect, timeout, status, body, validation };

    FetchError(Kind kind, const std::string& what, int status = 0)
        : Error(what), kind_(kind), status_(status) {}

    Kind kind() const noexcept { return kind_; }
    int status() const noexcept { return status_; }

    /// Transport failures and 5xx responses are worth retrying; bad payloads are not.
    bool retryable() const noexcept {
        return kind_ == Kind::connect || kind_ == Kind::timeout ||
               (kind_ == Kind::status && status_ >= 500);
    }

private:
    Kind kind_;
    int status_;
};

/// I/O failure while writing; written() counts records that made it out.
class WriteError : public Error {
public:
    WriteError(const std::string& what, std::size_t written) : Error(what), written_(written) {}

    std::size_t written() const noexcept { return written_; }

private:
    std::size_t written_;
};

/// Model fitting cannot start (e.g. no usable features).
class FitError : public Error {
public:
    using Error::Error;
};

/// User-supplied configuration leads to an unusable pipeline.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A model and a data set disagree on the feature layout.
class SchemaMismatchError : public ValidationError {
public:
    SchemaMismatchError(std::vector<std::string> expected, std::vector<std::string> actual);

    const std::vector<std::string>& expected() const noexcept { return expected_; }
    const std::vector<std::string>& actual() const noexcept { return actual_; }

    /// Human-readable "-missing / +unexpected" listing.
    std::string diff() const;

private:
    std::vector<std::string> expected_;
    std::vector<std::string> actual_;
};

}  // namespace wattribute
