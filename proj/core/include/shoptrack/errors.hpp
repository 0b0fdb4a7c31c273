#pragma once

#include <stdexcept>
#include <string>

namespace shoptrack {

// Bad input data or configuration. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& message) : std::runtime_error(message) {}
};

// Filesystem trouble (missing file, unwritable directory). CLI exit code 2.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace shoptrack
