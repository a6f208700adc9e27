#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <sstream>
#include <vector>

namespace arcframe {

// Thrown on violated preconditions (boundary mismatches, bad sizes, ...).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class... Args>
[[noreturn]] inline void fail(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    throw DomainError(os.str());
}

template <class... Args>
inline void require(bool cond, Args&&... args) {
    if (!cond) fail(std::forward<Args>(args)...);
}

// Internal consistency check; a failure here is a bug, not bad input.
inline void internal_check(bool cond, const char* what) {
    if (!cond) throw std::logic_error(std::string("internal invariant broken: ") + what);
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace arcframe
