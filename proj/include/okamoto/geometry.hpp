#pragma once

#include "errors.hpp"
#include "iteration.hpp"
#include "numeric.hpp"
#include "parameter.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace okamoto {

/// Per-level length of the polylines f_0 .. f_imax.
template <typename T>
struct LengthProfile {
    T a{};
    std::vector<double> euclidean;    // L_i
    std::vector<T> manhattan;         // sum |dx| + |dy| = 1 + TV
    std::vector<T> total_variation;   // sum |dy|

    unsigned max_level() const { return static_cast<unsigned>(euclidean.size()) - 1; }
};

template <typename T>
LengthProfile<T> arc_length_profile(const Parameter<T>& a, unsigned max_level, unsigned cap = default_level_cap) {
    detail::check_level(max_level, cap);
    LengthProfile<T> out;
    out.a = a.value();
    IterationGraph<T> g;
    for (unsigned i = 0;; ++i) {
        const double dx = to_double(inverse_pow3<T>(i));
        double length = 0;
        T variation = 0;
        for (std::size_t k = 0; k < g.segments(); ++k) {
            const T dy = abs_value(T(g.vertices[k + 1] - g.vertices[k]));
            const double dyd = to_double(dy);
            length += std::sqrt(dx * dx + dyd * dyd);
            variation += dy;
        }
        out.euclidean.push_back(length);
        out.total_variation.push_back(variation);
        out.manhattan.push_back(T(1) + variation);
        if (i == max_level) break;
        g = refine(g, a);
    }
    return out;
}

/// Column-area cover of f_i with width-delta rectangles, delta = 3^-i:
/// area = sum over columns of |rise| * delta, boxes = area / delta^2.
template <typename T>
struct CoverProfile {
    T a{};
    std::vector<T> delta;
    std::vector<T> area;
    std::vector<T> boxes;

    unsigned max_level() const { return static_cast<unsigned>(area.size()) - 1; }
};

template <typename T>
CoverProfile<T> cover_profile(const Parameter<T>& a, unsigned max_level, unsigned cap = default_level_cap) {
    detail::check_level(max_level, cap);
    CoverProfile<T> out;
    out.a = a.value();
    IterationGraph<T> g;
    for (unsigned i = 0;; ++i) {
        const T delta = inverse_pow3<T>(i);
        T oscillation = 0;
        for (std::size_t k = 0; k < g.segments(); ++k) oscillation += abs_value(T(g.vertices[k + 1] - g.vertices[k]));
        const T area = oscillation * delta;
        out.delta.push_back(delta);
        out.area.push_back(area);
        out.boxes.push_back(area / (delta * delta));
        if (i == max_level) break;
        g = refine(g, a);
    }
    return out;
}

/// log_3(12a - 3) for a > 1/2, otherwise 1.
inline double reference_dimension(double a) { return a > 0.5 ? std::log(12.0 * a - 3.0) / std::log(3.0) : 1.0; }

/// Least-squares line through (log(1/delta), log N).
struct DimensionEstimate {
    double slope = 0;
    double intercept = 0;
    double max_residual = 0;
    double reference = 0;
    unsigned min_level = 0, max_level = 0;
};

namespace detail {

inline DimensionEstimate fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() < 2) throw domain_error("a dimension fit needs at least two levels");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        sx += xs[j];
        sy += ys[j];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < xs.size(); ++j) {
        sxx += (xs[j] - mx) * (xs[j] - mx);
        sxy += (xs[j] - mx) * (ys[j] - my);
    }
    DimensionEstimate e;
    e.slope = sxy / sxx;
    e.intercept = my - e.slope * mx;
    for (std::size_t j = 0; j < xs.size(); ++j)
        e.max_residual = std::max(e.max_residual, std::abs(ys[j] - (e.intercept + e.slope * xs[j])));
    return e;
}

inline void check_fit_levels(unsigned min_level, unsigned max_level) {
    if (min_level < 1 || max_level <= min_level)
        throw domain_error("dimension fit needs 1 <= min_level < max_level, got " + std::to_string(min_level) +
                           ".." + std::to_string(max_level));
}

} // namespace detail

/// Box-counting slope from the column-area counts N = A / delta^2.
template <typename T>
DimensionEstimate dimension_estimate(const Parameter<T>& a, unsigned min_level, unsigned max_level,
                                     unsigned cap = default_level_cap) {
    detail::check_fit_levels(min_level, max_level);
    const auto cover = cover_profile(a, max_level, cap);
    std::vector<double> xs, ys;
    for (unsigned i = min_level; i <= max_level; ++i) {
        xs.push_back(static_cast<double>(i) * std::log(3.0));
        ys.push_back(std::log(to_double(cover.boxes[i])));
    }
    auto e = detail::fit_line(xs, ys);
    e.reference = reference_dimension(a.as_double());
    e.min_level = min_level;
    e.max_level = max_level;
    return e;
}

/// Number of grid squares of side 3^-j met by the graph, for j in
/// [min_level, max_level]. The graph's range over each column is read from the
/// vertices of f_{fine_level}; a continuous graph meets every square between
/// the column minimum and maximum.
inline std::vector<double> square_grid_counts(const Parameter<double>& a, unsigned min_level, unsigned max_level,
                                              unsigned fine_level, unsigned cap = default_level_cap) {
    if (fine_level < max_level) throw domain_error("fine level must be at least the finest counting level");
    const auto g = construct_iteration(a, fine_level, cap);
    std::vector<double> counts;
    for (unsigned j = min_level; j <= max_level; ++j) {
        const std::uint64_t columns = pow3(j);
        const std::uint64_t step = pow3(fine_level - j);
        const double cells = static_cast<double>(columns);
        double total = 0;
        for (std::uint64_t c = 0; c < columns; ++c) {
            const auto first = g.vertices.begin() + static_cast<std::ptrdiff_t>(c * step);
            const auto [lo, hi] = std::minmax_element(first, first + static_cast<std::ptrdiff_t>(step) + 1);
            const double bottom = std::min(std::floor(*lo * cells), cells - 1);
            const double top = std::min(std::floor(*hi * cells), cells - 1);
            total += top - bottom + 1;
        }
        counts.push_back(total);
    }
    return counts;
}

/// Conventional square-grid box-counting slope; a cross-check on the column
/// counts, expected to agree only to a few hundredths at desk-scale levels.
inline DimensionEstimate square_grid_dimension(const Parameter<double>& a, unsigned min_level = 4,
                                               unsigned max_level = 10, unsigned fine_level = 12,
                                               unsigned cap = default_level_cap) {
    detail::check_fit_levels(min_level, max_level);
    const auto counts = square_grid_counts(a, min_level, max_level, fine_level, cap);
    std::vector<double> xs, ys;
    for (unsigned j = min_level; j <= max_level; ++j) {
        xs.push_back(static_cast<double>(j) * std::log(3.0));
        ys.push_back(std::log(counts[j - min_level]));
    }
    auto e = detail::fit_line(xs, ys);
    e.reference = reference_dimension(a.as_double());
    e.min_level = min_level;
    e.max_level = max_level;
    return e;
}

} // namespace okamoto
