#pragma once

#include <stdexcept>
#include <string>

namespace stbc {

// Incompatible matrix/vector dimensions.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Argument outside the operation's domain (bad constellation order, rho <= 0, ...).
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A required algebraic structure is absent (Gram matrix not 2x2 block-pairable,
// seed code failing the orthogonality gate).
class StructureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exhaustive enumeration would exceed the configured budget.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bit-stream length not divisible into symbols.
class FramingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Invalid or inconsistent simulation/CLI configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace stbc
