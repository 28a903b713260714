#pragma once

#include "errors.hpp"
#include "ifs.hpp"
#include "parallel.hpp"
#include "parameter.hpp"
#include "random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace okamoto {

/// Chaos-game sample of the natural measure on the graph of F_a.
struct MassSample {
    double a = 0;
    std::array<double, 3> weights{};   // (a, 2a - 1, a) / (4a - 1)
    std::uint64_t seed = 0;
    std::vector<Point2<double>> points;
    std::vector<std::uint64_t> steps;  // chain step at which each point was recorded

    std::size_t size() const noexcept { return points.size(); }
};

/// Map probabilities proportional to the area factors of w1, w2, w3.
inline std::array<double, 3> chaos_weights(const Parameter<double>& p) {
    const double a = p.value();
    if (!(a > 0.5))
        throw unsupported_region_error("chaos game needs a > 1/2 so that the w2 weight 2a - 1 is positive");
    const double total = 4.0 * a - 1.0;
    return {a / total, (2.0 * a - 1.0) / total, a / total};
}

/// Iterates the IFS from `start`, picking the map chooser() in {0, 1, 2} each
/// step, and records n points after burn_in steps.
template <typename Chooser>
std::vector<Point2<double>> iterate_ifs(const Parameter<double>& p, std::size_t n, std::size_t burn_in,
                                        Chooser&& chooser, Point2<double> start = {0.0, 0.0},
                                        std::vector<std::uint64_t>* steps = nullptr) {
    const auto maps = ifs_maps(p);
    std::vector<Point2<double>> pts;
    pts.reserve(n);
    Point2<double> z = start;
    for (std::uint64_t step = 0; pts.size() < n; ++step) {
        z = maps[chooser()](z);
        if (step >= burn_in) {
            pts.push_back(z);
            if (steps) steps->push_back(step);
        }
    }
    return pts;
}

struct ChaosOptions {
    std::size_t chains = 1;   // independent chains with derived seeds, concatenated in order
    unsigned threads = 1;
};

/// Random iteration from (0, 0) on the graph. Output depends on (seed, chains)
/// only, not on the thread count.
inline MassSample chaos_game(const Parameter<double>& p, std::size_t n, std::size_t burn_in, std::uint64_t seed,
                             ChaosOptions opt = {}) {
    if (n < 1) throw domain_error("chaos game needs n >= 1");
    if (opt.chains < 1) throw domain_error("chaos game needs at least one chain");
    MassSample out;
    out.a = p.value();
    out.weights = chaos_weights(p);
    out.seed = seed;

    const double cut1 = out.weights[0], cut2 = out.weights[0] + out.weights[1];
    std::vector<std::vector<Point2<double>>> pts(opt.chains);
    std::vector<std::vector<std::uint64_t>> steps(opt.chains);
    parallel_for(opt.chains, opt.threads, [&](std::size_t c) {
        const std::size_t count = n / opt.chains + (c < n % opt.chains ? 1 : 0);
        Engine rng(opt.chains == 1 ? seed : derive_seed(seed, c));
        auto choose = [&] {
            const double u = uniform01(rng);
            return u < cut1 ? 0 : (u < cut2 ? 1 : 2);
        };
        if (count) pts[c] = iterate_ifs(p, count, burn_in, choose, {0.0, 0.0}, &steps[c]);
    });
    out.points.reserve(n);
    out.steps.reserve(n);
    for (std::size_t c = 0; c < opt.chains; ++c) {
        out.points.insert(out.points.end(), pts[c].begin(), pts[c].end());
        out.steps.insert(out.steps.end(), steps[c].begin(), steps[c].end());
    }
    return out;
}

struct CellReport {
    std::uint64_t ix = 0, iy = 0;
    double mass = 0;   // fraction of sample points in the cell
    double ratio = 0;  // mass / bound
    bool flagged = false;
};

/// Empirical check of mu(U) <= (12a - 3) |U|^s, s = log_3(12a - 3), on the
/// 3^-i grid with |U| the cell diameter sqrt(2) 3^-i. Only occupied cells are
/// listed; an empty cell has mass 0 and always passes.
struct MassBoundReport {
    unsigned grid_level = 0;
    double side = 0;
    double diameter = 0;
    double exponent = 0;
    double bound = 0;
    double slack = 0;
    std::size_t points = 0;
    std::vector<CellReport> cells;  // sorted by (ix, iy)
    double max_ratio = 0;
    std::size_t flagged = 0;

    double cell_mass(std::uint64_t ix, std::uint64_t iy) const {
        auto it = std::lower_bound(cells.begin(), cells.end(), std::pair{ix, iy}, [](const CellReport& c, auto key) {
            return std::pair{c.ix, c.iy} < key;
        });
        return it != cells.end() && it->ix == ix && it->iy == iy ? it->mass : 0.0;
    }

    double column_mass(std::uint64_t ix) const {
        double m = 0;
        for (const auto& c : cells)
            if (c.ix == ix) m += c.mass;
        return m;
    }
};

inline constexpr double default_mass_slack = 0.2;

inline MassBoundReport mass_bound_check(const MassSample& sample, unsigned grid_level,
                                        double slack = default_mass_slack) {
    if (sample.points.empty()) throw domain_error("mass bound check needs a nonempty sample");
    if (grid_level < 1 || grid_level > 20) throw domain_error("grid level must lie in [1, 20]");
    if (!(sample.a > 0.5)) throw unsupported_region_error("mass bound applies to a > 1/2");

    MassBoundReport r;
    r.grid_level = grid_level;
    const std::uint64_t n = pow3(grid_level);
    r.side = 1.0 / static_cast<double>(n);
    r.diameter = std::sqrt(2.0) * r.side;
    const double c = 12.0 * sample.a - 3.0;
    r.exponent = std::log(c) / std::log(3.0);
    r.bound = c * std::pow(r.diameter, r.exponent);
    r.slack = slack;
    r.points = sample.points.size();

    auto index = [&](double v) {
        const double cell = std::floor(v * static_cast<double>(n));
        return static_cast<std::uint64_t>(std::clamp(cell, 0.0, static_cast<double>(n - 1)));
    };
    std::vector<std::uint64_t> ids;
    ids.reserve(sample.points.size());
    for (const auto& p : sample.points) ids.push_back(index(p.x) * n + index(p.y));
    std::sort(ids.begin(), ids.end());

    const double total = static_cast<double>(ids.size());
    for (std::size_t j = 0; j < ids.size();) {
        std::size_t k = j;
        while (k < ids.size() && ids[k] == ids[j]) ++k;
        CellReport cell;
        cell.ix = ids[j] / n;
        cell.iy = ids[j] % n;
        cell.mass = static_cast<double>(k - j) / total;
        cell.ratio = cell.mass / r.bound;
        cell.flagged = cell.ratio > 1.0 + slack;
        r.max_ratio = std::max(r.max_ratio, cell.ratio);
        if (cell.flagged) ++r.flagged;
        r.cells.push_back(cell);
        j = k;
    }
    return r;
}

} // namespace okamoto
