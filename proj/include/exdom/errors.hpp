#pragma once

#include <stdexcept>
#include <string>

namespace exdom {

// Bad input: caller violated a precondition.
class DomainError : public std::domain_error
{
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// Numerical failure: the algorithm could not meet its accuracy contract.
class NumericalError : public std::runtime_error
{
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

class QuadratureError : public NumericalError
{
public:
    explicit QuadratureError(const std::string& what) : NumericalError(what) {}
};

class BracketError : public NumericalError
{
public:
    explicit BracketError(const std::string& what) : NumericalError(what) {}
};

class ConvergenceError : public NumericalError
{
public:
    explicit ConvergenceError(const std::string& what) : NumericalError(what) {}
};

// Unreadable or malformed input files, unwritable outputs.
class IoError : public std::runtime_error
{
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace exdom
