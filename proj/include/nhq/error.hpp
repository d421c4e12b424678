#pragma once

#include <stdexcept>
#include <string>

namespace nhq {

// Process exit codes of the nhq command-line tool.
enum class ExitCode : int {
    ok = 0,
    usage = 1,
    validation = 2,
    numerical = 3,
    io = 4,
};

// Bad argument to a library operation (dimension mismatch, qubit index out of range, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A physics parameter violates a SystemConfig invariant. `invariant()` names it, e.g. "gamma >= 0".
class ValidationError : public InvalidArgument {
public:
    ValidationError(std::string invariant, const std::string& detail)
        : InvalidArgument("validation failed: " + invariant + " (" + detail + ")"),
          invariant_(std::move(invariant)) {}

    const std::string& invariant() const noexcept { return invariant_; }

private:
    std::string invariant_;
};

// The no-jump trajectory has vanishing probability; the conditional state is undefined.
class PostSelectionExtinct : public std::runtime_error {
public:
    explicit PostSelectionExtinct(double survival)
        : std::runtime_error("post-selection extinct: survival probability " + std::to_string(survival)),
          survival_(survival) {}

    double survival() const noexcept { return survival_; }

private:
    double survival_;
};

class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    IoError(const std::string& path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace nhq
