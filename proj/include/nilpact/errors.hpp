#pragma once

#include <stdexcept>
#include <string>

namespace nilpact {

// Violated operation precondition (mismatched groups, bad ranges, ...).
class precondition_error : public std::invalid_argument {
public:
    explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

// An exhaustive enumeration would exceed its configured budget.
// Exceeding a bound is an explicit error, never silent sampling.
class bound_exceeded : public std::runtime_error {
public:
    explicit bound_exceeded(const std::string& what) : std::runtime_error(what) {}
};

// Malformed configuration input (JSON group specs, CLI fragments).
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nilpact
