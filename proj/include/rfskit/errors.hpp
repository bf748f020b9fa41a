#pragma once

#include <stdexcept>
#include <string>

namespace rfskit {

// Bad input data or violated contract (maps to CLI exit code 3).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure: singular/ill-conditioned covariance, zero rate, rank
// deficiency (maps to CLI exit code 4).
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rfskit
