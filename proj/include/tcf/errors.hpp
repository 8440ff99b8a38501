#pragma once

#include <stdexcept>
#include <string>

namespace tcf {

// Error taxonomy mirrors the CLI exit codes: config_invalid -> 2,
// numerics -> 3, io_error -> 4.

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NumericsError : std::runtime_error {
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace tcf
