#pragma once

#include "errors.hpp"
#include "numeric.hpp"
#include "parameter.hpp"
#include "ternary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace okamoto {

template <typename T>
struct SeriesValue {
    T value{};
    double error_bound = 0;   // certified |value - F_a(x)|
    std::size_t digits_used = 0;
};

/// Per-digit offset o(d) and multiplier m(d) of the digit series
///   F_a(0.d1 d2 ...) = sum_n o(d_n) prod_{k<n} m(d_k).
template <typename T>
struct DigitSeriesCoefficients {
    std::array<T, 3> offset;
    std::array<T, 3> multiplier;

    explicit DigitSeriesCoefficients(const Parameter<T>& p) {
        const T& a = p.value();
        offset = {T(0), a, T(1) - a};
        multiplier = {a, T(1) - T(2) * a, a};
    }
};

/// Remainder after the first n digits is at most |prod m| * tail_factor(a).
inline double tail_factor(double a) {
    const double rho = std::max(a, std::abs(1.0 - 2.0 * a));
    return std::max(a, 1.0 - a) / (1.0 - rho);
}

/// Evaluates F_a at a ternary expansion with a certified error bound.
///
/// Digits are consumed until the tail bound drops below tol. A known tail
/// (trailing zeros, or the all-twos tail whose value is F_a(1) = 1) is summed
/// in closed form, and a zero multiplier (a = 1/2, digit 1) ends the series,
/// so ternary rationals evaluate exactly in exact mode.
/// Throws precision_error when the digits run out first.
template <typename T>
SeriesValue<T> eval_digit_series(const Parameter<T>& a, const TernaryExpansion& x, double tol) {
    if (!(tol > 0)) throw domain_error("tolerance must be positive");

    const DigitSeriesCoefficients<T> c(a);
    const double factor = tail_factor(a.as_double());
    const bool exact_tail = !x.is_truncation();

    // First-order float rounding: each addition errs by half an ulp of the
    // partial sum, and the j-th product carries j relative roundings.
    constexpr double half_eps = is_exact_v<T> ? 0.0 : std::numeric_limits<double>::epsilon() / 2;
    double rounding = 0;

    SeriesValue<T> out;
    T prod = 1;
    std::size_t n = 0;
    auto add = [&](const T& term) {
        out.value += term;
        rounding += half_eps * (std::abs(to_double(out.value)) + static_cast<double>(n + 1) * std::abs(to_double(term)));
    };
    for (;; ++n) {
        if (prod == 0) break;
        if (!exact_tail) {
            const double tail = to_double(abs_value(prod)) * factor;
            if (tail + rounding < tol) {
                out.error_bound = tail + rounding;
                break;
            }
        }
        if (n == x.size()) {
            if (!exact_tail) {
                const double achievable = to_double(abs_value(prod)) * factor + rounding;
                throw precision_error("expansion has only " + std::to_string(n) +
                                          " digits; achievable error bound " + format_number(achievable) +
                                          " is not below tolerance " + format_number(tol),
                                      achievable);
            }
            if (x.tail() == Tail::twos) add(prod);
            break;
        }
        const auto d = x.digits()[n];
        if (d != 0) add(c.offset[d] * prod);
        prod *= c.multiplier[d];
    }
    out.digits_used = n;
    if (exact_tail || prod == 0) {
        out.error_bound = rounding;
        if (out.error_bound >= tol)
            throw precision_error("float rounding bound " + format_number(out.error_bound) +
                                      " is not below tolerance " + format_number(tol),
                                  out.error_bound);
    }
    return out;
}

} // namespace okamoto
