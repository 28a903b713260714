#include <okamoto/differentiability.hpp>

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace okamoto;

namespace {

TernaryExpansion periodic(std::vector<std::uint8_t> block, std::size_t n) {
    std::vector<std::uint8_t> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = block[j % block.size()];
    return TernaryExpansion(std::move(d));
}

// a0 to 40 digits, from an independent mpmath bisection on 54a^3 - 27a^2 - 1.
constexpr double a0_reference = 0.5592168996013533183208812893107084919864;

} // namespace

TEST(DerivativeTrace, IdentityIsOne) {
    std::mt19937_64 rng(1);
    const auto tr = derivative_trace(Parameter<Rational>(Rational(1, 3)),
                                     TernaryExpansion(oracle::random_digits(rng, 10)), 10);
    for (const auto& v : tr.values) EXPECT_EQ(v, 1);
}

TEST(DerivativeTrace, OscillatesAtA0) {
    const double a0 = find_a0(1e-15).a0;
    const auto tr = derivative_trace(Parameter<double>(a0), periodic({0, 1, 2}, 150), 150);
    for (std::size_t m = 1; m <= 50; ++m) EXPECT_NEAR(tr.at(3 * m), m % 2 ? -1.0 : 1.0, 1e-9) << m;
}

TEST(DerivativeTrace, CantorNoOnes) {
    const auto tr = derivative_trace(Parameter<double>(0.5), TernaryExpansion(std::vector<std::uint8_t>(5, 0)), 5);
    EXPECT_DOUBLE_EQ(tr.at(5), 7.59375);
    const auto exact = derivative_trace(Parameter<Rational>(Rational(1, 2)), to_ternary(Rational(0), 5), 5);
    EXPECT_EQ(exact.at(5), Rational(243, 32));
}

TEST(DerivativeTrace, Errors) {
    EXPECT_THROW(derivative_trace(Parameter<double>(0.4), TernaryExpansion({0, 1}), 0), domain_error);
    EXPECT_THROW(derivative_trace(Parameter<double>(0.4), TernaryExpansion({0, 1}), 3), domain_error);
}

TEST(DerivativeTrace, RecursionAndSign) {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int t = 0; t < 200; ++t) {
        const double a = u(rng);
        const auto digits = oracle::random_digits(rng, 60);
        const auto tr = derivative_trace(Parameter<double>(a), TernaryExpansion(digits), 60);
        double prev = 1;
        for (std::size_t m = 1; m <= 60; ++m) {
            const double expect = prev * (digits[m - 1] == 1 ? 3 - 6 * a : 3 * a);
            EXPECT_EQ(tr.at(m), expect);
            if (a > 0.5) EXPECT_EQ(std::signbit(tr.at(m)), tr.ones_prefix[m - 1] % 2 == 1);
            if (a < 0.5) EXPECT_GT(tr.at(m), 0);
            prev = tr.at(m);
        }
    }
}

TEST(DerivativeTrace, SaturatesToSignedInfinity) {
    const auto tr = derivative_trace(Parameter<double>(0.99), periodic({1, 0}, 2000), 2000);
    EXPECT_TRUE(tr.saturated);
    EXPECT_TRUE(std::isinf(tr.values.back()));
    EXPECT_TRUE(std::isinf(tr.max_abs));
    // a = 1/2: any 1 digit zeroes the product, even after overflow
    std::vector<std::uint8_t> d(2000, 0);
    d.back() = 1;
    const auto half = derivative_trace(Parameter<double>(0.5), TernaryExpansion(d), 2000);
    EXPECT_TRUE(half.saturated);
    EXPECT_EQ(half.values.back(), 0.0);
}

TEST(DerivativeTrace, StatsPerPrefix) {
    const auto tr = derivative_trace(Parameter<double>(0.4), TernaryExpansion({1, 0, 0, 1, 0, 0}), 6);
    EXPECT_EQ(tr.stats(6).ones_count, 2u);
    EXPECT_EQ(tr.stats(1).ones_count, 1u);
}

TEST(BlockProduct, EqualsMinusOneAtA0) {
    const double a0 = find_a0(1e-15).a0;
    for (auto block : std::vector<std::vector<std::uint8_t>>{{1, 0, 0}, {0, 1, 2}, {2, 2, 1}, {0, 1, 0}, {2, 0, 1}}) {
        const auto tr = derivative_trace(Parameter<double>(a0), TernaryExpansion(block), 3);
        EXPECT_NEAR(tr.at(3), -1.0, 1e-10);
    }
}

TEST(ClassifyLimit, Examples) {
    EXPECT_EQ(classify_limit(Parameter<double>(0.4), 1.0 / 3.0), LimitClass::zero);
    EXPECT_NEAR(27 * 0.4 * 0.4 - 54 * 0.4 * 0.4 * 0.4, 0.864, 1e-12);
    EXPECT_EQ(classify_limit(Parameter<double>(0.7), 1.0 / 3.0), LimitClass::diverges_in_magnitude);
    EXPECT_NEAR(27 * 0.7 * 0.7 - 54 * 0.7 * 0.7 * 0.7, -5.292, 1e-12);
    for (double g : {0.0, 0.2, 0.5, 1.0}) {
        EXPECT_EQ(classify_limit(Parameter<double>(1.0 / 3.0), g), LimitClass::constant_one);
        EXPECT_EQ(classify_limit(Parameter<Rational>(Rational(1, 3)), g), LimitClass::constant_one);
    }
    EXPECT_EQ(classify_limit(Parameter<double>(find_a0(1e-15).a0), 1.0 / 3.0),
              LimitClass::oscillates_on_unit_magnitude);
    EXPECT_THROW(classify_limit(Parameter<double>(0.4), 1.5), domain_error);
}

TEST(ClassifyLimit, ZeroToTheZeroConvention) {
    // a = 1/2: r = 0 once any ones occur, r = 3a = 3/2 for gamma = 0
    EXPECT_EQ(classify_limit(Parameter<double>(0.5), 0.3), LimitClass::zero);
    EXPECT_EQ(classify_limit(Parameter<double>(0.5), 0.0), LimitClass::diverges_in_magnitude);
}

TEST(ClassifyLimit, AgreesWithCubicOnGrid) {
    for (int k = 1; k <= 1000; ++k) {
        const double a = k / 1001.0;
        const double cubic = std::abs(27 * a * a - 54 * a * a * a);
        const auto c = classify_limit(Parameter<double>(a), 1.0 / 3.0);
        if (cubic < 1)
            EXPECT_EQ(c, LimitClass::zero) << a;
        else
            EXPECT_EQ(c, LimitClass::diverges_in_magnitude) << a;
    }
}

TEST(FindA0, RootAndBracket) {
    EXPECT_EQ(critical_cubic(0.5), -1.0);
    EXPECT_NEAR(critical_cubic(2.0 / 3.0), 3.0, 1e-14);
    const auto c = find_a0(1e-14);
    EXPECT_GT(c.a0, 0.5592);
    EXPECT_LT(c.a0, 0.5593);
    EXPECT_LT(std::abs(c.residual), 1e-12);
    EXPECT_LE(c.upper - c.lower, 1e-14);
    EXPECT_NEAR(c.a0, a0_reference, 1e-14);
    EXPECT_THROW(find_a0(1e-18), precision_error);
    EXPECT_THROW(find_a0(0.0), domain_error);
}

TEST(RegionClassify, Examples) {
    auto r = region_classify(Parameter<double>(0.2));
    EXPECT_EQ(r.region, Region::ae_differentiable);
    EXPECT_EQ(r.first, FirstDerivative::zero_ae);
    EXPECT_EQ(r.second, SecondDerivative::nonexistent_everywhere);

    auto n = region_classify(Parameter<double>(0.7));
    EXPECT_EQ(n.region, Region::nowhere_differentiable);
    EXPECT_EQ(n.description(), "nowhere differentiable");

    EXPECT_EQ(region_classify(Parameter<double>(critical_a0())).region, Region::ae_nondifferentiable);
    EXPECT_EQ(region_classify(Parameter<Rational>(Rational(1, 3))).region, Region::identity);
    EXPECT_EQ(region_classify(Parameter<Rational>(Rational(1, 3))).second, SecondDerivative::zero_ae);
    EXPECT_EQ(region_classify(Parameter<double>(0.5)).region, Region::cantor);
    EXPECT_EQ(region_classify(Parameter<double>(0.5)).second, SecondDerivative::zero_ae);
    EXPECT_EQ(region_classify(Parameter<Rational>(Rational(2, 3))).region, Region::nowhere_differentiable);
    EXPECT_EQ(region_classify(Parameter<double>(2.0 / 3.0)).region, Region::nowhere_differentiable);
    EXPECT_EQ(region_classify(Parameter<double>(0.6)).region, Region::ae_nondifferentiable);
    EXPECT_EQ(region_classify(Parameter<double>(0.55)).region, Region::ae_differentiable);
}

TEST(RegionClassify, ChangesOnlyAtBoundaries) {
    const double a0 = critical_a0();
    const std::vector<double> boundaries{1.0 / 3.0, 0.5, a0, 2.0 / 3.0};
    auto region_of = [](double a) { return region_classify(Parameter<double>(a)).region; };
    Region prev = region_of(1e-4);
    double prev_a = 1e-4;
    for (int k = 1; k < 10000; ++k) {
        const double a = k / 10000.0;
        const Region r = region_of(a);
        if (r != prev) {
            bool crossed = false;
            for (double b : boundaries) crossed |= prev_a <= b && b <= a;
            EXPECT_TRUE(crossed) << "region changed between " << prev_a << " and " << a;
        }
        prev = r;
        prev_a = a;
    }
}

TEST(NondiffPoints, Examples) {
    EXPECT_EQ(nondiff_points(Parameter<Rational>(Rational(1, 5)), 0), (std::vector<Rational>{Rational(1, 2)}));
    EXPECT_EQ(nondiff_points(Parameter<Rational>(Rational(9, 20)), 1),
              (std::vector<Rational>{0, Rational(1, 3), Rational(2, 3), 1}));
    EXPECT_EQ(nondiff_points(Parameter<Rational>(Rational(1, 5)), 1),
              (std::vector<Rational>{Rational(1, 6), Rational(1, 2), Rational(5, 6)}));
    const auto f = nondiff_points(Parameter<double>(0.2), 1);
    ASSERT_EQ(f.size(), 3u);
    EXPECT_DOUBLE_EQ(f[0], 1.0 / 6.0);
}

TEST(NondiffPoints, UnsupportedRegions) {
    for (double a : {1.0 / 3.0, 0.5, 0.56, 0.6, 0.9})
        EXPECT_THROW(nondiff_points(Parameter<double>(a), 2), unsupported_region_error) << a;
    EXPECT_NO_THROW(nondiff_points(Parameter<double>(0.55), 2));
}

TEST(NondiffPoints, SortedInsideUnitInterval) {
    for (double a : {0.1, 0.3, 0.4, 0.52}) {
        const auto pts = nondiff_points(Parameter<double>(a), 6);
        EXPECT_TRUE(std::is_sorted(pts.begin(), pts.end()));
        EXPECT_GE(pts.front(), 0.0);
        EXPECT_LE(pts.back(), 1.0);
    }
}

TEST(DigitFrequency, PeriodicControl) {
    const auto s = summarize_digit_frequency(1, 300, [](std::size_t) { return periodic({0, 1, 2}, 300); });
    EXPECT_EQ(s.mean, 1.0 / 3.0);
    EXPECT_EQ(s.min, 1.0 / 3.0);
    EXPECT_EQ(s.fraction_within, 1.0);
}

TEST(DigitFrequency, SeededRunIsReproducible) {
    const auto s = digit_frequency_experiment(200, 3000, 1);
    EXPECT_NEAR(s.mean, 1.0 / 3.0, 0.01);
    const auto again = digit_frequency_experiment(200, 3000, 1);
    EXPECT_EQ(s.mean, again.mean);
    EXPECT_EQ(s.min, again.min);
    EXPECT_EQ(s.max, again.max);
    const auto threaded = digit_frequency_experiment(200, 3000, 1, 4);
    EXPECT_EQ(s.mean, threaded.mean);
    EXPECT_EQ(s.fraction_within, threaded.fraction_within);
    EXPECT_NE(s.mean, digit_frequency_experiment(200, 3000, 2).mean);
}

TEST(DerivativeExperiment, ZeroAndDivergenceRegions) {
    // At a = 0.4, |D_200| < 1e-2 iff at least 60 of the 200 digits are 1, which
    // has probability 0.85915 under uniform digits (binomial sum). Over 100
    // streams the count sits near 86 with sd 3.48, so check a 4 sd band.
    const auto zero = derivative_experiment(Parameter<double>(0.4), 100, 200, 3);
    EXPECT_GE(zero.final_below, 72u);
    EXPECT_LE(zero.final_below, 99u);
    const auto big = derivative_experiment(Parameter<double>(0.7), 100, 100, 3);
    EXPECT_GE(big.ever_above, 95u);
    const auto threaded = derivative_experiment(Parameter<double>(0.7), 100, 100, 3, 1e-2, 1e6, 3);
    EXPECT_EQ(big.ever_above, threaded.ever_above);
}
