#pragma once

#include <stdexcept>
#include <string>

namespace elastic {

// Two families: malformed input (bad files, broken invariants on
// construction) and domain failures (the mathematics is undefined for the
// given arguments). The CLI maps them to exit codes 2 and 3.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Length of a function (equivalently ||q||^2) is exactly zero.
class ZeroLength : public DomainError {
public:
    explicit ZeroLength(const std::string& what) : DomainError("zero length: " + what) {}
};

class NotInvertible : public DomainError {
public:
    explicit NotInvertible(const std::string& what) : DomainError("not invertible: " + what) {}
};

class NotPositiveSlope : public DomainError {
public:
    explicit NotPositiveSlope(const std::string& what)
        : DomainError("not strictly increasing: " + what) {}
};

class BasepointMismatch : public DomainError {
public:
    explicit BasepointMismatch(const std::string& what)
        : DomainError("basepoint mismatch: " + what) {}
};

class LevelTooDeep : public DomainError {
public:
    explicit LevelTooDeep(const std::string& what) : DomainError("level too deep: " + what) {}
};

}  // namespace elastic
