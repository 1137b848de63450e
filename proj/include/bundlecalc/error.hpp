#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bundlecalc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text: expression grammar, JSON documents, schema shape.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position) {}
    explicit ParseError(const std::string& what) : Error(what), position_(npos) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

// Well-formed input that the calculus rejects (e.g. Ext over a connection space).
class DomainError : public Error {
public:
    using Error::Error;
};

// Catalog inconsistencies: duplicate symbols, missing antiparticles, broken invariants.
class RegistryError : public DomainError {
public:
    using DomainError::DomainError;
};

// A breaking mode the model declares inapplicable ("none: too strong", ...).
class NotApplicable : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace bundlecalc
