#pragma once

#include "iteration.hpp"
#include "parameter.hpp"

#include <array>

namespace okamoto {

/// Plane affine map p -> L p + t.
template <typename T>
struct AffineMap2D {
    int index = 0;              // 1, 2 or 3
    std::array<T, 4> linear{};  // row-major 2x2
    std::array<T, 2> offset{};

    Point2<T> operator()(const Point2<T>& p) const {
        return {linear[0] * p.x + linear[1] * p.y + offset[0], linear[2] * p.x + linear[3] * p.y + offset[1]};
    }

    T horizontal_ratio() const { return linear[0]; }
    T vertical_multiplier() const { return linear[3]; }
};

/// The three contractions whose attractor is the graph of F_a:
///   w1(x, y) = (x/3, a y)
///   w2(x, y) = ((2 - x)/3, (2a - 1) y + 1 - a)
///   w3(x, y) = ((2 + x)/3, a y + 1 - a)
template <typename T>
std::array<AffineMap2D<T>, 3> ifs_maps(const Parameter<T>& p) {
    const T& a = p.value();
    const T third = ratio<T>(1, 3);
    const T two_thirds = ratio<T>(2, 3);
    return {{
        {1, {third, T(0), T(0), a}, {T(0), T(0)}},
        {2, {-third, T(0), T(0), T(2) * a - T(1)}, {two_thirds, T(1) - a}},
        {3, {third, T(0), T(0), a}, {two_thirds, T(1) - a}},
    }};
}

} // namespace okamoto
