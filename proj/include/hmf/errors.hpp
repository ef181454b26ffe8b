#pragma once

#include <stdexcept>
#include <string>

namespace hmf {

// Error taxonomy; the CLI maps categories to process exit codes.
enum class ErrorCategory { Usage, Domain, Capacity, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorCategory cat, const std::string& msg)
        : std::runtime_error(msg), cat_(cat) {}
    ErrorCategory category() const noexcept { return cat_; }

private:
    ErrorCategory cat_;
};

struct UsageError : Error {
    explicit UsageError(const std::string& m) : Error(ErrorCategory::Usage, m) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& m) : Error(ErrorCategory::Domain, m) {}
};

struct CapacityError : Error {
    explicit CapacityError(const std::string& m) : Error(ErrorCategory::Capacity, m) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& m) : Error(ErrorCategory::Numerical, m) {}
};

}  // namespace hmf
