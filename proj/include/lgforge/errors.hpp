/*
 * errors.hpp
 * ----------
 * Exception hierarchy shared by all lgforge modules.
 *
 * Every failure raised by the library derives from lgforge::Error so callers
 * (the CLI in particular) can separate computation errors from usage errors.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace lgforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed expression text or an unsupported rational sub-expression.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, size_t pos)
        : Error(msg + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
    size_t position() const { return pos_; }

private:
    size_t pos_;
};

// Operands with different numbers of variables or parameters.
class RankMismatch : public Error {
public:
    using Error::Error;
};

// Violated precondition of a mathematical operation (non-unimodular matrix,
// zero covector, torsion class group, empty polytope, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// A mutation whose image is not a Laurent polynomial.
class NotMutable : public Error {
public:
    NotMutable(long long grade, const std::string& msg)
        : Error(msg), grade_(grade) {}
    long long grade() const { return grade_; }

private:
    long long grade_;
};

// Schema violation while loading catalog data.
class CatalogError : public Error {
public:
    using Error::Error;
};

}  // namespace lgforge
