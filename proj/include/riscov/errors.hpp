#pragma once

#include <stdexcept>
#include <string>

namespace riscov {

/// Invalid configuration or input data (bad geometry, malformed files,
/// dimension mismatches). Maps to CLI exit code 1.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite values detected during computation. Maps to CLI exit code 2.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace riscov
