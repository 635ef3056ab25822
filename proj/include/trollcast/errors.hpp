#pragma once

#include <stdexcept>
#include <string>

namespace trollcast {

// Exit-code mapping used by the CLI: usage/config -> 1, data -> 2, internal -> 3.

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InternalError : std::runtime_error {
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace trollcast
