#pragma once

#include <stdexcept>
#include <string>

namespace lc {

// All recoverable failures carry a stable short code (used by the CLI to map
// onto exit statuses) plus a human message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const char* code, const std::string& msg) {
    throw Error(code, msg);
}

inline void require(bool ok, const char* code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

}  // namespace lc
