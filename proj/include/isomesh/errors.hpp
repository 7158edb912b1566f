#pragma once

#include <stdexcept>
#include <string>

namespace isomesh {

// Point lies outside a field's validity domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// A matrix that must be positive-definite (or invertible) is not.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace isomesh
