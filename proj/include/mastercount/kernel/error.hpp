#pragma once

#include <stdexcept>
#include <string>

namespace mastercount {

/// Failure classes map one-to-one onto CLI exit codes.
enum class ErrorKind {
    domain,         // bad input, pole, divergence: exit 2
    verification,   // a numeric check failed: exit 1
    contradiction,  // result contradicts the published counting: exit 3
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline Error domain_error(const std::string& what) { return Error(ErrorKind::domain, what); }
inline Error contradiction_error(const std::string& what) { return Error(ErrorKind::contradiction, what); }

}  // namespace mastercount
