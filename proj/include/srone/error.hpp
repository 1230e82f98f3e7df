#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace srone {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed ring spec or element literal. `offset` is the byte position of
/// the offending token in the input text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A constructed structure failed the ring axioms (or involution axioms).
class AxiomViolation : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A produced certificate or inverse failed its multiplication re-check.
class CertificateError : public Error {
public:
    using Error::Error;
};

/// Bad invocation: unknown theorem id, unknown ring, conflicting options.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace srone
