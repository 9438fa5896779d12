#pragma once

#include <stdexcept>
#include <string>

namespace tsgkit {

/// Error taxonomy shared by the library and the CLI exit-code mapping:
/// input/format problems exit with 2, shape/contract violations with 3,
/// numeric/degenerate conditions with 4.
class ToolkitError : public std::runtime_error {
public:
    ToolkitError(std::string msg, int exit_code)
        : std::runtime_error(std::move(msg)), exit_code_(exit_code) {}

    [[nodiscard]] int exit_code() const noexcept { return exit_code_; }

private:
    int exit_code_;
};

/// Missing files, unreadable paths, I/O failures.
class IoError : public ToolkitError {
public:
    explicit IoError(std::string msg) : ToolkitError(std::move(msg), 2) {}
};

/// Malformed text input (CSV cells, config values).
class ParseError : public ToolkitError {
public:
    explicit ParseError(std::string msg) : ToolkitError(std::move(msg), 2) {}
};

/// Binary format violations: bad magic, wrong version, truncated payload.
class FormatError : public ToolkitError {
public:
    explicit FormatError(std::string msg) : ToolkitError(std::move(msg), 2) {}
};

/// Incompatible tensor shapes or ragged structures.
class ShapeError : public ToolkitError {
public:
    explicit ShapeError(std::string msg) : ToolkitError(std::move(msg), 3) {}
};

/// Pairing rules that cannot be applied (e.g. index pairing with unequal R).
class PairingError : public ToolkitError {
public:
    explicit PairingError(std::string msg) : ToolkitError(std::move(msg), 3) {}
};

/// Splits that would leave a side empty.
class SplitError : public ToolkitError {
public:
    explicit SplitError(std::string msg) : ToolkitError(std::move(msg), 3) {}
};

/// Parameter values outside their contract (perplexity vs point count, ...).
class ParameterError : public ToolkitError {
public:
    explicit ParameterError(std::string msg) : ToolkitError(std::move(msg), 3) {}
};

/// Degenerate inputs: constant series, zero-variance dimensions.
class DegenerateError : public ToolkitError {
public:
    explicit DegenerateError(std::string msg) : ToolkitError(std::move(msg), 4) {}
};

/// Non-finite values where finite ones are required.
class NumericError : public ToolkitError {
public:
    explicit NumericError(std::string msg) : ToolkitError(std::move(msg), 4) {}
};

} // namespace tsgkit
