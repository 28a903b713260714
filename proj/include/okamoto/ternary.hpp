#pragma once

#include "errors.hpp"
#include "numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace okamoto {

/// The grid point k / 3^level.
struct GridPoint {
    std::uint64_t k = 0;
    unsigned level = 0;

    bool operator==(const GridPoint&) const = default;
};

/// What follows the stored digits. `unspecified` means the digits are only a
/// prefix of some longer expansion.
enum class Tail : std::uint8_t { unspecified, zeros, twos };

/// Base-3 digit string x = 0.d1 d2 d3 ...
///
/// Terminating rationals use the trailing-zeros form and x = 1 is written as
/// 0.222...; the repeating-twos form of other rationals can still be built by
/// passing the digits explicitly.
class TernaryExpansion {
public:
    TernaryExpansion() = default;

    explicit TernaryExpansion(std::vector<std::uint8_t> digits, Tail tail = Tail::unspecified,
                              std::optional<GridPoint> source = std::nullopt)
        : digits_(std::move(digits)), tail_(tail), source_(source) {
        for (auto d : digits_)
            if (d > 2) throw domain_error("ternary digit out of range: " + std::to_string(d));
    }

    std::span<const std::uint8_t> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    Tail tail() const noexcept { return tail_; }
    bool is_truncation() const noexcept { return tail_ == Tail::unspecified; }
    const std::optional<GridPoint>& source() const noexcept { return source_; }

    /// True when digit positions [0, n) are all determined.
    bool has_digits(std::size_t n) const noexcept { return n <= digits_.size() || tail_ != Tail::unspecified; }

    // Zero-based; positions past the stored digits come from a known tail.
    std::uint8_t digit(std::size_t j) const {
        if (j < digits_.size()) return digits_[j];
        switch (tail_) {
        case Tail::zeros: return 0;
        case Tail::twos: return 2;
        default: throw domain_error("digit " + std::to_string(j + 1) + " is not determined by a truncated expansion");
        }
    }

    /// sum_{j<n} d_j 3^-(j+1)
    template <typename T>
    T prefix_value(std::size_t n) const {
        T sum = 0, scale = 1;
        for (std::size_t j = 0; j < n; ++j) {
            scale /= 3;
            sum += scale * digit(j);
        }
        return sum;
    }

private:
    std::vector<std::uint8_t> digits_;
    Tail tail_ = Tail::unspecified;
    std::optional<GridPoint> source_;
};

struct DigitStats {
    std::size_t n = 0;
    std::size_t ones_count = 0;  // i(n)
    double ratio = 0;            // i(n) / n
    double gamma_estimate = 0;   // min of i(m)/m over m in [ceil(n/2), n]
};

/// Digits of k / 3^i: base-3 form of k padded to i places, then zeros.
/// k = 3^i gives the all-twos expansion of 1.
inline TernaryExpansion ternary_rational(std::uint64_t k, unsigned i) {
    const std::uint64_t denom = pow3(i);
    if (k > denom)
        throw domain_error("k = " + std::to_string(k) + " exceeds 3^" + std::to_string(i));
    if (k == denom) return TernaryExpansion(std::vector<std::uint8_t>(i, 2), Tail::twos, GridPoint{k, i});
    std::vector<std::uint8_t> digits(i);
    for (std::size_t j = i; j-- > 0; k /= 3) digits[j] = static_cast<std::uint8_t>(k % 3);
    return TernaryExpansion(std::move(digits), Tail::zeros, GridPoint{k, i});
}

namespace detail {

// k/3^i reduced to lowest level, when it fits in 64 bits.
inline std::optional<GridPoint> grid_source(const std::vector<std::uint8_t>& digits, std::size_t used) {
    if (used > 40) return std::nullopt;
    std::uint64_t k = 0;
    for (std::size_t j = 0; j < used; ++j) k = 3 * k + digits[j];
    return GridPoint{k, static_cast<unsigned>(used)};
}

inline void check_digit_count(std::size_t n) {
    if (n < 1) throw domain_error("digit count must be at least 1");
}

} // namespace detail

// Deepest level at which a double is still recognised as k / 3^j.
inline constexpr unsigned float_grid_detection_level = 20;

/// First n base-3 digits of x by repeated multiply-by-3 and floor.
///
/// Ternary rationals stored in binary come out terminating: x is first matched
/// against the correctly rounded k / 3^j for j <= 20, and inside the loop any
/// 3r within 2^-40 of an integer snaps to it. The grid match is needed because
/// the representation error of x triples with every digit and outgrows the
/// fixed snap window after about a dozen digits.
inline TernaryExpansion to_ternary(double x, std::size_t n) {
    detail::check_digit_count(n);
    if (!(x >= 0.0 && x <= 1.0))
        throw domain_error("x must lie in [0, 1], got " + format_number(x));
    if (x == 1.0) return TernaryExpansion(std::vector<std::uint8_t>(n, 2), Tail::twos, GridPoint{1, 0});

    for (unsigned j = 1; j <= float_grid_detection_level; ++j) {
        const double denom = static_cast<double>(pow3(j));
        const double k = std::round(x * denom);
        if (k / denom == x) {
            auto grid = ternary_rational(static_cast<std::uint64_t>(k), j);
            std::vector<std::uint8_t> digits(grid.digits().begin(), grid.digits().end());
            digits.resize(std::max<std::size_t>(n, j), 0);
            if (digits.size() > n) {
                // n < j: the terminating tail starts after the requested prefix
                digits.resize(n);
                return TernaryExpansion(std::move(digits), Tail::unspecified);
            }
            auto source = detail::grid_source(digits, j);
            return TernaryExpansion(std::move(digits), Tail::zeros, source);
        }
    }

    constexpr double snap = 0x1.0p-40;
    std::vector<std::uint8_t> digits;
    digits.reserve(n);
    double r = x;
    if (r == 0.0) return TernaryExpansion(std::vector<std::uint8_t>(n, 0), Tail::zeros, GridPoint{0, 0});
    while (digits.size() < n) {
        double t = 3.0 * r;
        double nearest = std::round(t);
        if (std::abs(t - nearest) < snap) t = nearest;
        double d = std::floor(t);
        if (d > 2.0) d = 2.0;  // only reachable for x within 2^-40 of 1
        digits.push_back(static_cast<std::uint8_t>(d));
        r = t - d;
        if (r == 0.0) {
            const std::size_t used = digits.size();
            auto source = detail::grid_source(digits, used);
            digits.resize(std::max(n, used), 0);
            return TernaryExpansion(std::move(digits), Tail::zeros, source);
        }
    }
    return TernaryExpansion(std::move(digits), Tail::unspecified);
}

/// Exact base-3 long division of a rational in [0, 1].
inline TernaryExpansion to_ternary(const Rational& x, std::size_t n) {
    detail::check_digit_count(n);
    if (x < 0 || x > 1) throw domain_error("x must lie in [0, 1], got " + x.str());
    if (x == 1) return TernaryExpansion(std::vector<std::uint8_t>(n, 2), Tail::twos, GridPoint{1, 0});

    Integer rem = numerator(x);
    const Integer den = denominator(x);
    std::vector<std::uint8_t> digits;
    digits.reserve(n);
    while (digits.size() < n) {
        if (rem == 0) {
            const std::size_t used = digits.size();
            auto source = detail::grid_source(digits, used);
            digits.resize(n, 0);
            return TernaryExpansion(std::move(digits), Tail::zeros, source);
        }
        rem *= 3;
        Integer d = rem / den;
        rem -= d * den;
        digits.push_back(static_cast<std::uint8_t>(d.convert_to<unsigned>()));
    }
    if (rem == 0) return TernaryExpansion(digits, Tail::zeros, detail::grid_source(digits, digits.size()));
    return TernaryExpansion(std::move(digits), Tail::unspecified);
}

/// Counts of the digit 1 in the first n places.
inline DigitStats digit_stats(const TernaryExpansion& e, std::size_t n) {
    if (n == 0) throw domain_error("digit_stats needs n >= 1");
    if (!e.has_digits(n))
        throw domain_error("expansion has " + std::to_string(e.size()) + " digits, " + std::to_string(n) + " requested");

    DigitStats s;
    s.n = n;
    const std::size_t from = (n + 1) / 2;
    double liminf = 1.0;
    for (std::size_t m = 1; m <= n; ++m) {
        if (e.digit(m - 1) == 1) ++s.ones_count;
        if (m >= from) liminf = std::min(liminf, static_cast<double>(s.ones_count) / static_cast<double>(m));
    }
    s.ratio = static_cast<double>(s.ones_count) / static_cast<double>(n);
    s.gamma_estimate = liminf;
    return s;
}

} // namespace okamoto
