#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jamsim {

enum class ConfigErrorKind {
    malformed,
    missing_field,
    range_violation,
    schedule_overflow,
};

std::string_view to_string(ConfigErrorKind kind) noexcept;

// Raised for every rejected parameter, scenario or configuration file.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(ConfigErrorKind kind, const std::string& what)
        : std::invalid_argument(what), kind_(kind) {}

    ConfigErrorKind kind() const noexcept { return kind_; }

private:
    ConfigErrorKind kind_;
};

// Raised when an agent is handed feedback for a selection it did not make.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Unreadable config files and unwritable output locations.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace jamsim
