#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liequad {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(const std::string& message, std::size_t position)
        : Error(message + " at position " + std::to_string(position)), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class UnknownIdentifierError : public Error {
public:
    UnknownIdentifierError(const std::string& name, std::size_t position)
        : Error("unknown identifier '" + name + "' at position " + std::to_string(position)),
          name_(name), position_(position) {}
    const std::string& name() const { return name_; }
    std::size_t position() const { return position_; }

private:
    std::string name_;
    std::size_t position_;
};

/// Evaluation outside the domain of a function (ln, sqrt, division, fractional power).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& subexpression)
        : Error("domain error in " + subexpression), subexpression_(subexpression) {}
    const std::string& subexpression() const { return subexpression_; }

private:
    std::string subexpression_;
};

class GeometryMismatch : public Error {
public:
    using Error::Error;
};

class ArityError : public Error {
public:
    using Error::Error;
};

}  // namespace liequad
