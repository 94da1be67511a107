#pragma once

#include <stdexcept>
#include <string>

namespace varifold {

/// Error codes map 1:1 onto CLI exit codes (input error = 2, undecided = 3).
class Error : public std::runtime_error {
public:
    enum class Code {
        invalid_input,
        non_generic,
        mismatch,
        cap_exceeded,
    };

    Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}

    Code code() const { return code_; }

private:
    Code code_;
};

} // namespace varifold
