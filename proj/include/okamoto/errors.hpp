#pragma once

#include <stdexcept>
#include <string>

namespace okamoto {

// Bad argument or violated precondition. CLI exit code 1.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// The requested operation is not defined for this parameter region.
class unsupported_region_error : public domain_error {
public:
    using domain_error::domain_error;
};

// Request exceeds the configured level cap.
class resource_error : public std::length_error {
public:
    using std::length_error::length_error;
};

// A numerical target cannot be met; carries the best bound that was reachable.
// CLI exit code 2.
class precision_error : public std::runtime_error {
public:
    precision_error(const std::string& what, double achievable)
        : std::runtime_error(what), achievable_(achievable) {}

    double achievable() const noexcept { return achievable_; }

private:
    double achievable_;
};

} // namespace okamoto
