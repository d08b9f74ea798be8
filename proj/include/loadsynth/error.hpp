#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace loadsynth {

/// Failure categories. The numeric values are the CLI exit codes.
enum class ErrorKind : int {
    config = 2,
    input_data = 3,
    numeric_degeneracy = 4,
    io = 5,
};

constexpr std::string_view error_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::config: return "E_CONFIG";
        case ErrorKind::input_data: return "E_INPUT";
        case ErrorKind::numeric_degeneracy: return "E_DEGENERATE";
        case ErrorKind::io: return "E_IO";
    }
    return "E_UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

inline Error config_error(const std::string& what) { return {ErrorKind::config, what}; }
inline Error input_error(const std::string& what) { return {ErrorKind::input_data, what}; }
inline Error degeneracy_error(const std::string& what) { return {ErrorKind::numeric_degeneracy, what}; }
inline Error io_error(const std::string& what) { return {ErrorKind::io, what}; }

}  // namespace loadsynth
