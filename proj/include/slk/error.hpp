#pragma once

#include <stdexcept>
#include <string>

namespace slk {

// Numeric values double as CLI exit codes and C API status codes.
enum class ErrorKind : int {
    Usage = 2,
    Unsupported = 3,
    Integrity = 4,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

// Operands living over different prime fields.
struct DistinctModulusError : Error {
    explicit DistinctModulusError(const std::string& what) : Error(ErrorKind::Usage, what) {}
};

struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& what) : Error(ErrorKind::Unsupported, what) {}
};

struct IntegrityError : Error {
    explicit IntegrityError(const std::string& what) : Error(ErrorKind::Integrity, what) {}
};

}  // namespace slk
