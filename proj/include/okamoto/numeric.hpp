#pragma once

#include "errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

namespace okamoto {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Mode { exact, floating };

inline const char* to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

template <typename T>
inline constexpr bool is_exact_v = !std::is_floating_point_v<T>;

template <typename T>
inline constexpr Mode mode_of_v = is_exact_v<T> ? Mode::exact : Mode::floating;

template <typename T>
double to_double(const T& v) {
    if constexpr (std::is_floating_point_v<T>)
        return static_cast<double>(v);
    else
        return v.template convert_to<double>();
}

template <typename T>
T from_rational(const Rational& r) {
    if constexpr (std::is_floating_point_v<T>)
        return r.convert_to<T>();
    else
        return T(r);
}

// Exact p/q in a scalar type; the float version rounds once.
template <typename T>
T ratio(long p, long q) {
    if constexpr (std::is_floating_point_v<T>)
        return static_cast<T>(p) / static_cast<T>(q);
    else
        return T(p, q);
}

template <typename T>
T abs_value(const T& v) {
    using std::abs;
    using boost::multiprecision::abs;
    return abs(v);
}

// 3^i as an unsigned 64-bit integer; i <= 40.
inline std::uint64_t pow3(unsigned i) {
    if (i > 40)
        throw domain_error("3^" + std::to_string(i) + " does not fit in 64 bits");
    std::uint64_t r = 1;
    while (i--) r *= 3;
    return r;
}

template <typename T>
T inverse_pow3(unsigned i) {
    if constexpr (std::is_floating_point_v<T>) {
        T r = 1;
        while (i--) r /= 3;
        return r;
    } else {
        return T(Integer(1), boost::multiprecision::pow(Integer(3), i));
    }
}

// Exact mode prints "p/q"; float mode prints 17 significant digits.
template <typename T>
std::string format_number(const T& v) {
    if constexpr (std::is_floating_point_v<T>) {
        std::ostringstream os;
        os << std::setprecision(17) << v;
        return os.str();
    } else {
        return v.str();
    }
}

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline Integer parse_integer(std::string_view s, std::string_view whole) {
    s = trim(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty())
        throw domain_error("malformed number '" + std::string(whole) + "'");
    Integer r = 0;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw domain_error("malformed number '" + std::string(whole) + "'");
        r = r * 10 + (c - '0');
    }
    return negative ? Integer(-r) : r;
}

// "b^e" or a plain integer.
inline Integer parse_power(std::string_view s, std::string_view whole) {
    auto caret = s.find('^');
    if (caret == std::string_view::npos) return parse_integer(s, whole);
    Integer base = parse_integer(s.substr(0, caret), whole);
    Integer e = parse_integer(s.substr(caret + 1), whole);
    if (e < 0 || e > 4096)
        throw domain_error("exponent out of range in '" + std::string(whole) + "'");
    return boost::multiprecision::pow(base, e.convert_to<unsigned>());
}

} // namespace detail

/// Parses "p/q", "k/3^i", an integer, or a decimal literal ("0.7317", "1e-3")
/// into an exact rational.
inline Rational parse_rational(std::string_view text) {
    std::string_view s = detail::trim(text);
    if (s.empty()) throw domain_error("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        Integer p = detail::parse_integer(s.substr(0, slash), text);
        Integer q = detail::parse_power(detail::trim(s.substr(slash + 1)), text);
        if (q == 0) throw domain_error("zero denominator in '" + std::string(text) + "'");
        return Rational(p, q);
    }

    std::string_view mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        Integer ex = detail::parse_integer(s.substr(e + 1), text);
        if (ex < -4096 || ex > 4096) throw domain_error("exponent out of range in '" + std::string(text) + "'");
        exponent = ex.convert_to<long>();
    }
    std::string digits;
    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    bool seen_point = false, seen_digit = false;
    for (char c : mantissa) {
        if (c == '.' && !seen_point) {
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            seen_digit = true;
            if (seen_point) --exponent;
        } else {
            throw domain_error("malformed number '" + std::string(text) + "'");
        }
    }
    if (!seen_digit) throw domain_error("malformed number '" + std::string(text) + "'");

    // cpp_int reads a leading 0 as an octal prefix
    const auto nonzero = digits.find_first_not_of('0');
    digits = nonzero == std::string::npos ? "0" : digits.substr(nonzero);
    Integer m(digits);
    if (negative) m = -m;
    Integer scale = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(m, scale) : Rational(m * scale);
}

} // namespace okamoto
