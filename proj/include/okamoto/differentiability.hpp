#pragma once

#include "errors.hpp"
#include "iteration.hpp"
#include "numeric.hpp"
#include "parallel.hpp"
#include "parameter.hpp"
#include "random.hpp"
#include "ternary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace okamoto {

// ---------------------------------------------------------------------------
// Derivative traces
// ---------------------------------------------------------------------------

/// Slopes of f_m on the level-m interval containing x:
///   D_m = (3 - 6a)^{i(m)} (3a)^{m - i(m)},  D_0 = 1,
/// where i(m) counts the ones among the first m digits.
template <typename T>
struct DerivativeTrace {
    T a{};
    std::vector<std::uint8_t> digits;
    std::vector<T> values;                 // values[m - 1] = D_m
    std::vector<std::size_t> ones_prefix;  // ones_prefix[m - 1] = i(m)
    bool saturated = false;                // float overflow reached +-inf
    double max_abs = 0;                    // max_m |D_m|

    std::size_t size() const noexcept { return values.size(); }
    const T& at(std::size_t m) const { return values.at(m - 1); }

    DigitStats stats(std::size_t m) const {
        return digit_stats(TernaryExpansion(std::vector<std::uint8_t>(digits.begin(), digits.begin() + m)), m);
    }
};

template <typename T>
DerivativeTrace<T> derivative_trace(const Parameter<T>& p, const TernaryExpansion& x, std::size_t n) {
    if (n == 0) throw domain_error("derivative trace needs n >= 1");
    if (!x.has_digits(n))
        throw domain_error("expansion has " + std::to_string(x.size()) + " digits, " + std::to_string(n) + " requested");

    const T& a = p.value();
    const T ones_factor = T(3) - T(6) * a;
    const T other_factor = T(3) * a;

    DerivativeTrace<T> tr;
    tr.a = a;
    tr.digits.reserve(n);
    tr.values.reserve(n);
    tr.ones_prefix.reserve(n);

    T d = 1;
    std::size_t ones = 0;
    for (std::size_t m = 0; m < n; ++m) {
        const auto digit = x.digit(m);
        tr.digits.push_back(digit);
        const T& f = digit == 1 ? ones_factor : other_factor;
        if (digit == 1) ++ones;
        if constexpr (is_exact_v<T>) {
            d *= f;
        } else if (f == 0) {
            d = 0;  // also clears a saturated value; the exact product is 0
        } else {
            d *= f;
            if (std::isinf(d)) tr.saturated = true;
        }
        tr.values.push_back(d);
        tr.ones_prefix.push_back(ones);
        tr.max_abs = std::max(tr.max_abs, std::abs(to_double(d)));
    }
    return tr;
}

// ---------------------------------------------------------------------------
// Limit classification
// ---------------------------------------------------------------------------

enum class LimitClass { zero, diverges_in_magnitude, constant_one, oscillates_on_unit_magnitude };

inline const char* to_string(LimitClass c) {
    switch (c) {
    case LimitClass::zero: return "zero";
    case LimitClass::diverges_in_magnitude: return "diverges-in-magnitude";
    case LimitClass::constant_one: return "constant-one";
    default: return "oscillates-on-unit-magnitude";
    }
}

// |r - 1| below this counts as r = 1 in float mode.
inline constexpr double unit_rate_tolerance = 1e-12;

/// Per-digit geometric growth rate r(a, g) = 3 |1 - 2a|^g a^(1 - g) of D_n
/// for digit streams whose fraction of ones is g. 0^0 = 1.
inline double growth_rate(double a, double gamma) {
    return 3.0 * std::pow(std::abs(1.0 - 2.0 * a), gamma) * std::pow(a, 1.0 - gamma);
}

template <typename T>
bool is_one_third(const T& a) {
    if constexpr (is_exact_v<T>)
        return a == T(1, 3);
    else
        return a == 1.0 / 3.0;
}

/// Limit behaviour of D_n when the fraction of ones settles at gamma. The
/// r = 1 label away from a = 1/3 only means the magnitude does not settle
/// under this digit model.
template <typename T>
LimitClass classify_limit(const Parameter<T>& p, double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw domain_error("gamma must lie in [0, 1]");
    if (is_one_third(p.value())) return LimitClass::constant_one;
    const double r = growth_rate(p.as_double(), gamma);
    if (std::abs(r - 1.0) <= unit_rate_tolerance) return LimitClass::oscillates_on_unit_magnitude;
    return r < 1.0 ? LimitClass::zero : LimitClass::diverges_in_magnitude;
}

// ---------------------------------------------------------------------------
// Critical value a0
// ---------------------------------------------------------------------------

struct CriticalValue {
    double a0 = 0;
    double residual = 0;      // 54 a0^3 - 27 a0^2 - 1
    double lower = 0, upper = 0;
    int iterations = 0;
};

/// 54a^3 - 27a^2 - 1; its root in (1/2, 2/3) is where 27a^2 - 54a^3 = -1.
inline double critical_cubic(double a) { return 54.0 * a * a * a - 27.0 * a * a - 1.0; }

/// Bisection on [1/2, 2/3] until the bracket is no wider than tol.
inline CriticalValue find_a0(double tol) {
    if (!(tol > 0)) throw domain_error("tolerance must be positive");
    if (tol < std::numeric_limits<double>::epsilon())
        throw precision_error("tolerance " + format_number(tol) + " is below double resolution near a0",
                              std::numeric_limits<double>::epsilon());

    double lo = 0.5, hi = 2.0 / 3.0;  // g(lo) = -1 < 0 < 3 = g(2/3)
    CriticalValue out;
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break;
        if (critical_cubic(mid) < 0)
            lo = mid;
        else
            hi = mid;
        ++out.iterations;
    }
    out.lower = lo;
    out.upper = hi;
    out.a0 = lo + (hi - lo) / 2;
    out.residual = critical_cubic(out.a0);
    return out;
}

inline double critical_a0() {
    static const double a0 = find_a0(std::numeric_limits<double>::epsilon()).a0;
    return a0;
}

// ---------------------------------------------------------------------------
// Region classification
// ---------------------------------------------------------------------------

enum class Region { identity, cantor, ae_differentiable, ae_nondifferentiable, nowhere_differentiable };
enum class FirstDerivative { one_everywhere, zero_ae, diverges_ae, diverges_everywhere };
enum class SecondDerivative { zero_ae, nonexistent_everywhere };

inline const char* to_string(Region r) {
    switch (r) {
    case Region::identity: return "identity";
    case Region::cantor: return "cantor";
    case Region::ae_differentiable: return "ae-differentiable";
    case Region::ae_nondifferentiable: return "ae-nondifferentiable";
    default: return "nowhere-differentiable";
    }
}

inline const char* to_string(FirstDerivative f) {
    switch (f) {
    case FirstDerivative::one_everywhere: return "F'(x) = 1 for all x";
    case FirstDerivative::zero_ae: return "F'(x) = 0 for almost all x";
    case FirstDerivative::diverges_ae: return "F'(x) diverges for almost all x";
    default: return "F'(x) exists nowhere";
    }
}

inline const char* to_string(SecondDerivative s) {
    return s == SecondDerivative::zero_ae ? "F''(x) = 0 wherever it exists" : "F''(x) exists nowhere";
}

struct RegionClass {
    Region region;
    FirstDerivative first;
    SecondDerivative second;

    // Human-readable label, e.g. "nowhere differentiable".
    std::string description() const {
        switch (region) {
        case Region::identity: return "identity (F(x) = x), differentiable everywhere";
        case Region::cantor: return "Cantor function, differentiable almost everywhere";
        case Region::ae_differentiable: return "differentiable almost everywhere";
        case Region::ae_nondifferentiable: return "differentiable almost nowhere";
        default: return "nowhere differentiable";
        }
    }
};

namespace detail {

// Sign of a - b/c, exact in exact mode.
template <typename T>
int compare_ratio(const T& a, long b, long c) {
    const T r = ratio<T>(b, c);
    return a < r ? -1 : (a > r ? 1 : 0);
}

} // namespace detail

/// Almost-everywhere behaviour of F_a' and F_a'' by parameter region. The
/// boundaries are 1/3, 1/2, a0 and 2/3.
template <typename T>
RegionClass region_classify(const Parameter<T>& p) {
    const T& a = p.value();
    if (detail::compare_ratio(a, 1, 3) == 0)
        return {Region::identity, FirstDerivative::one_everywhere, SecondDerivative::zero_ae};
    if (detail::compare_ratio(a, 1, 2) == 0)
        return {Region::cantor, FirstDerivative::zero_ae, SecondDerivative::zero_ae};
    if (detail::compare_ratio(a, 2, 3) >= 0)
        return {Region::nowhere_differentiable, FirstDerivative::diverges_everywhere,
                SecondDerivative::nonexistent_everywhere};
    if (p.as_double() >= critical_a0())
        return {Region::ae_nondifferentiable, FirstDerivative::diverges_ae, SecondDerivative::nonexistent_everywhere};
    return {Region::ae_differentiable, FirstDerivative::zero_ae, SecondDerivative::nonexistent_everywhere};
}

/// Level-i members of the dense families where F_a' fails to exist:
///   (2k + 1) / (2 3^i), k < 3^i      for a in (0, 1/3)
///   k / 3^i,            k <= 3^i     for a in (1/3, 1/2) and (1/2, a0)
/// Sorted ascending.
template <typename T>
std::vector<T> nondiff_points(const Parameter<T>& p, unsigned level, unsigned cap = default_level_cap) {
    detail::check_level(level, cap);
    const T& a = p.value();
    const bool below_third = detail::compare_ratio(a, 1, 3) < 0;
    const bool grid_family = detail::compare_ratio(a, 1, 3) > 0 && detail::compare_ratio(a, 1, 2) != 0 &&
                             p.as_double() < critical_a0();
    if (!below_third && !grid_family)
        throw unsupported_region_error("no dense non-differentiability family is given for a = " +
                                       format_number(a) + "; supported ranges are (0, 1/3), (1/3, 1/2), (1/2, a0)");

    const std::uint64_t n = pow3(level);
    std::vector<T> pts;
    if (below_third) {
        pts.reserve(n);
        for (std::uint64_t k = 0; k < n; ++k) {
            if constexpr (is_exact_v<T>)
                pts.push_back(T(Integer(2 * k + 1), Integer(2 * n)));
            else
                pts.push_back(static_cast<double>(2 * k + 1) / static_cast<double>(2 * n));
        }
    } else {
        pts.reserve(n + 1);
        for (std::uint64_t k = 0; k <= n; ++k) {
            if constexpr (is_exact_v<T>)
                pts.push_back(T(Integer(k), Integer(n)));
            else
                pts.push_back(static_cast<double>(k) / static_cast<double>(n));
        }
    }
    return pts;
}

// ---------------------------------------------------------------------------
// Statistical experiments
// ---------------------------------------------------------------------------

/// n independent uniform ternary digits from the given seed.
inline TernaryExpansion random_ternary(std::size_t n, std::uint64_t seed) {
    Engine rng(seed);
    std::vector<std::uint8_t> digits(n);
    for (auto& d : digits) d = static_cast<std::uint8_t>(uniform_below(rng, 3));
    return TernaryExpansion(std::move(digits));
}

struct DigitFrequencySummary {
    std::size_t samples = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    double mean = 0, min = 0, max = 0;
    double fraction_within = 0;  // share of samples with |i(n)/n - 1/3| <= 0.02
};

inline constexpr double digit_frequency_band = 0.02;

/// Summary of i(n)/n over samples drawn by make_digits(sample_index).
template <typename DigitSource>
DigitFrequencySummary summarize_digit_frequency(std::size_t samples, std::size_t n, DigitSource&& make_digits,
                                                unsigned threads = 1) {
    if (samples < 1 || n < 1) throw domain_error("need at least one sample and one digit");
    std::vector<double> ratios(samples);
    parallel_for(samples, threads, [&](std::size_t s) { ratios[s] = digit_stats(make_digits(s), n).ratio; });

    DigitFrequencySummary out;
    out.samples = samples;
    out.n = n;
    out.min = *std::min_element(ratios.begin(), ratios.end());
    out.max = *std::max_element(ratios.begin(), ratios.end());
    double sum = 0;
    std::size_t within = 0;
    for (double r : ratios) {
        sum += r;
        if (std::abs(r - 1.0 / 3.0) <= digit_frequency_band) ++within;
    }
    out.mean = sum / static_cast<double>(samples);
    out.fraction_within = static_cast<double>(within) / static_cast<double>(samples);
    return out;
}

inline DigitFrequencySummary digit_frequency_experiment(std::size_t samples, std::size_t n, std::uint64_t seed,
                                                        unsigned threads = 1) {
    auto out = summarize_digit_frequency(
        samples, n, [&](std::size_t s) { return random_ternary(n, derive_seed(seed, s)); }, threads);
    out.seed = seed;
    return out;
}

struct DerivativeExperiment {
    std::size_t streams = 0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::size_t final_below = 0;   // streams with |D_n| < small
    std::size_t ever_above = 0;    // streams with max_m |D_m| > large
    double small = 0, large = 0;
};

/// Runs derivative traces over seeded uniform digit streams.
inline DerivativeExperiment derivative_experiment(const Parameter<double>& a, std::size_t streams, std::size_t n,
                                                  std::uint64_t seed, double small = 1e-2, double large = 1e6,
                                                  unsigned threads = 1) {
    if (streams < 1 || n < 1) throw domain_error("need at least one stream and one digit");
    std::vector<double> last(streams), peak(streams);
    parallel_for(streams, threads, [&](std::size_t s) {
        const auto tr = derivative_trace(a, random_ternary(n, derive_seed(seed, s)), n);
        last[s] = std::abs(tr.values.back());
        peak[s] = tr.max_abs;
    });
    DerivativeExperiment out{streams, n, seed, 0, 0, small, large};
    for (std::size_t s = 0; s < streams; ++s) {
        if (last[s] < small) ++out.final_below;
        if (peak[s] > large) ++out.ever_above;
    }
    return out;
}

} // namespace okamoto
