#pragma once

#include "errors.hpp"
#include "numeric.hpp"

namespace okamoto {

/// The shape parameter a of F_a, strictly inside (0, 1). T is double for
/// float mode or Rational for exact mode.
template <typename T>
class Parameter {
public:
    explicit Parameter(T a) : a_(std::move(a)) {
        if (!(a_ > 0 && a_ < 1))
            throw domain_error("parameter a must satisfy 0 < a < 1, got " + format_number(a_));
    }

    const T& value() const noexcept { return a_; }
    double as_double() const { return to_double(a_); }
    static constexpr Mode mode() noexcept { return mode_of_v<T>; }

private:
    T a_;
};

template <typename T>
Parameter<T> parameter_from(const Rational& a) {
    return Parameter<T>(from_rational<T>(a));
}

} // namespace okamoto
