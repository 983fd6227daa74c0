#pragma once

#include <stdexcept>
#include <string>

namespace vlpmono {

/// Malformed or invalid user-provided input (config files, CSV rows, JSON).
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem-level failure (missing file, unwritable directory).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Localization pipeline failure; the message names the failed precondition.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace vlpmono
