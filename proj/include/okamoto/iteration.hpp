#pragma once

#include "errors.hpp"
#include "numeric.hpp"
#include "parameter.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace okamoto {

inline constexpr unsigned default_level_cap = 16;

template <typename T>
struct Point2 {
    T x{};
    T y{};

    bool operator==(const Point2&) const = default;
};

/// The level-i polyline f_i: vertices[k] = f_i(k / 3^i), k = 0 .. 3^i.
template <typename T>
struct IterationGraph {
    unsigned level = 0;
    std::vector<T> vertices{T(0), T(1)};

    std::size_t segments() const noexcept { return vertices.size() - 1; }
};

namespace detail {

inline void check_level(unsigned level, unsigned cap) {
    if (level > cap)
        throw resource_error("level " + std::to_string(level) + " exceeds the level cap " + std::to_string(cap) +
                             " (3^level + 1 vertices)");
}

} // namespace detail

/// One refinement step. Each segment (yL, yR) with rise d becomes three pieces
/// through yL + a d and yL + (1 - a) d; old vertices are kept as they are.
template <typename T>
IterationGraph<T> refine(const IterationGraph<T>& g, const Parameter<T>& a) {
    if (g.level > 39 || g.vertices.size() != pow3(g.level) + 1)
        throw domain_error("graph has " + std::to_string(g.vertices.size()) + " vertices, not 3^" +
                           std::to_string(g.level) + " + 1");
    const T& lo = a.value();
    const T hi = T(1) - lo;

    IterationGraph<T> out;
    out.level = g.level + 1;
    out.vertices.clear();
    out.vertices.reserve(3 * g.segments() + 1);
    for (std::size_t k = 0; k < g.segments(); ++k) {
        const T& left = g.vertices[k];
        const T rise = g.vertices[k + 1] - left;
        out.vertices.push_back(left);
        out.vertices.push_back(left + lo * rise);
        out.vertices.push_back(left + hi * rise);
    }
    out.vertices.push_back(g.vertices.back());
    return out;
}

/// f_i obtained by i refinements of f_0(x) = x.
template <typename T>
IterationGraph<T> construct_iteration(const Parameter<T>& a, unsigned level, unsigned cap = default_level_cap) {
    detail::check_level(level, cap);
    IterationGraph<T> g;
    while (g.level < level) g = refine(g, a);
    return g;
}

// (k / 3^i, f_i(k / 3^i)) in increasing x.
template <typename T>
std::vector<Point2<T>> graph_points(const IterationGraph<T>& g) {
    std::vector<Point2<T>> pts;
    pts.reserve(g.vertices.size());
    const T step = inverse_pow3<T>(g.level);
    if constexpr (is_exact_v<T>) {
        for (std::size_t k = 0; k < g.vertices.size(); ++k) pts.push_back({step * T(k), g.vertices[k]});
    } else {
        // k / 3^i with a single rounding
        const double denom = static_cast<double>(pow3(g.level));
        for (std::size_t k = 0; k < g.vertices.size(); ++k)
            pts.push_back({static_cast<double>(k) / denom, g.vertices[k]});
    }
    return pts;
}

template <typename T>
std::vector<Point2<T>> sample_graph(const Parameter<T>& a, unsigned level, unsigned cap = default_level_cap) {
    return graph_points(construct_iteration(a, level, cap));
}

} // namespace okamoto
