#pragma once

#include <stdexcept>
#include <string>

namespace qno {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument / out-of-domain input (parity of the math, not of the machine).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(what) {}
};

// MPT real-algebra truncation guard violated.
class GuardError : public DomainError {
public:
    explicit GuardError(const std::string& what) : DomainError(what) {}
};

// Iterative procedure failed to reach its tolerance; carries the best value achieved.
class NumericError : public Error {
public:
    NumericError(const std::string& what, double achieved)
        : Error(what + " (achieved " + std::to_string(achieved) + ")"), achieved_(achieved) {}
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

} // namespace qno
