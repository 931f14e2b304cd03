#pragma once

#include <stdexcept>
#include <string>

namespace nonres {

/// An argument violates an operation's precondition.
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A search exhausted its configured cap (nonresidue search, factoring effort).
class search_cap_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A table-backed operation was asked for a modulus above its size threshold.
class threshold_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw precondition_error(what);
}

}  // namespace nonres
