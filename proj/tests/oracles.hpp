#pragma once

// Reference computations used by the tests. They share no code path with the
// library: values come from direct digit manipulation or brute force.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

// Cantor function from ternary digits: binary digit d/2 until the first 1,
// which contributes its own place value and ends the expansion.
inline double cantor(const std::vector<std::uint8_t>& digits) {
    double value = 0, place = 0.5;
    for (auto d : digits) {
        if (d == 1) return value + place;
        value += (d / 2) * place;
        place /= 2;
    }
    return value;
}

// f_i(k/3^i) by locating x's level-i interval and descending through the
// refinement rule directly (no series).
inline double vertex_by_descent(double a, const std::vector<std::uint8_t>& digits) {
    double left = 0, right = 1;
    for (auto d : digits) {
        const double rise = right - left;
        const double p1 = left + a * rise, p2 = left + (1 - a) * rise;
        if (d == 0) right = p1;
        else if (d == 1) { left = p1; right = p2; }
        else left = p2;
    }
    return left;
}

inline std::vector<std::uint8_t> random_digits(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> d(n);
    for (auto& v : d) v = static_cast<std::uint8_t>(rng() % 3);
    return d;
}

} // namespace oracle
