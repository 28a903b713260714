#include <okamoto/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace okamoto;

namespace {

double log3(double v) { return std::log(v) / std::log(3.0); }

Rational power(const Rational& base, unsigned n) {
    Rational r = 1;
    while (n--) r *= base;
    return r;
}

} // namespace

TEST(ArcLength, LevelZeroIsDiagonal) {
    for (double a : {0.1, 0.5, 0.8}) EXPECT_DOUBLE_EQ(arc_length_profile(Parameter<double>(a), 0).euclidean[0], std::sqrt(2.0));
}

TEST(ArcLength, IdentityStaysDiagonal) {
    const auto l = arc_length_profile(Parameter<double>(1.0 / 3.0), 8);
    for (double v : l.euclidean) EXPECT_NEAR(v, std::sqrt(2.0), 1e-12);
}

TEST(ArcLength, FirstLevelAtPointSix) {
    // polyline through (0,0), (1/3,0.6), (2/3,0.4), (1,1); value from direct mpmath evaluation
    const auto l = arc_length_profile(Parameter<double>(0.6), 1);
    EXPECT_NEAR(l.euclidean[1], 1.7614808117879534, 1e-12);
    EXPECT_NEAR(l.total_variation[1], 1.4, 1e-15);
}

TEST(ArcLength, MonotoneAndBoundedUpToOneHalf) {
    for (double a : {0.05, 0.2, 0.35, 0.5}) {
        const auto l = arc_length_profile(Parameter<double>(a), 11);
        for (unsigned i = 0; i <= 11; ++i) {
            EXPECT_GE(l.euclidean[i], std::sqrt(2.0) - 1e-12);
            EXPECT_LE(l.euclidean[i], 2.0 + 1e-12);
            if (i > 0) EXPECT_GE(l.euclidean[i], l.euclidean[i - 1] - 1e-12);
            EXPECT_NEAR(l.manhattan[i], 2.0, 1e-12);
        }
    }
}

TEST(ArcLength, ExactManhattanIsTwo) {
    const auto l = arc_length_profile(Parameter<Rational>(Rational(2, 5)), 5);
    for (const auto& m : l.manhattan) EXPECT_EQ(m, 2);
}

TEST(ArcLength, UnboundedAboveOneHalf) {
    const auto l = arc_length_profile(Parameter<double>(0.6), 10);
    for (unsigned i = 1; i <= 10; ++i) {
        EXPECT_GE(l.euclidean[i], l.euclidean[i - 1] - 1e-12);
        EXPECT_GE(l.euclidean[i], std::pow(1.4, i) - 1e-9);
    }
    EXPECT_GT(l.euclidean[10], 10.0);
}

TEST(CoverProfile, Examples) {
    const auto c = cover_profile(Parameter<Rational>(Rational(2, 3)), 1);
    EXPECT_EQ(c.area[0], 1);
    EXPECT_EQ(c.boxes[0], 1);
    EXPECT_EQ(c.area[1], Rational(5, 9));
    EXPECT_EQ(c.boxes[1], 5);

    const auto h = cover_profile(Parameter<Rational>(Rational(1, 2)), 2);
    EXPECT_EQ(h.area[2], Rational(1, 9));
    EXPECT_EQ(h.boxes[2], 9);
}

TEST(CoverProfile, ExactAreaLaw) {
    for (auto a : {Rational(3, 5), Rational(2, 3), Rational(9, 10)}) {
        const auto c = cover_profile(Parameter<Rational>(a), 7);
        for (unsigned i = 0; i <= 7; ++i) {
            EXPECT_EQ(c.area[i], power((4 * a - 1) / 3, i));
            EXPECT_EQ(c.boxes[i], power(12 * a - 3, i));
        }
    }
}

TEST(CoverProfile, RatioRecursion) {
    for (double a : {0.2, 0.5, 0.6, 0.75, 0.9}) {
        const auto c = cover_profile(Parameter<double>(a), 10);
        const double expected = a > 0.5 ? (4 * a - 1) / 3 : 1.0 / 3.0;
        for (unsigned i = 0; i < 10; ++i) EXPECT_NEAR(c.area[i + 1] / c.area[i], expected, 1e-12);
        for (unsigned i = 0; i < 10; ++i) {
            EXPECT_GT(c.boxes[i], 0);
            if (a > 0.5) EXPECT_LT(c.boxes[i], c.boxes[i + 1]);
        }
    }
}

TEST(DimensionEstimate, Examples) {
    const auto b = dimension_estimate(Parameter<double>(2.0 / 3.0), 1, 10);
    EXPECT_NEAR(b.slope, log3(5.0), 1e-9);
    EXPECT_NEAR(b.slope, 1.4649735207179271, 1e-9);
    EXPECT_LT(b.max_residual, 1e-10);
    EXPECT_DOUBLE_EQ(b.reference, log3(5.0));

    EXPECT_NEAR(dimension_estimate(Parameter<double>(0.3), 1, 10).slope, 1.0, 1e-10);
    EXPECT_NEAR(dimension_estimate(Parameter<double>(0.9), 1, 10).slope, 1.8697439987548656, 1e-9);
    EXPECT_NEAR(dimension_estimate(Parameter<Rational>(Rational(2, 3)), 1, 8).slope, log3(5.0), 1e-12);
}

TEST(DimensionEstimate, DegenerateFit) {
    EXPECT_THROW(dimension_estimate(Parameter<double>(0.7), 3, 3), domain_error);
    EXPECT_THROW(dimension_estimate(Parameter<double>(0.7), 0, 3), domain_error);
    EXPECT_THROW(dimension_estimate(Parameter<double>(0.7), 5, 2), domain_error);
}

TEST(DimensionEstimate, ContinuousAcrossOneHalf) {
    const double below = dimension_estimate(Parameter<double>(0.5), 1, 10).slope;
    const double above = dimension_estimate(Parameter<double>(0.5 + 1e-9), 1, 10).slope;
    EXPECT_NEAR(above, below, 1e-6);
    EXPECT_NEAR(reference_dimension(0.5 + 1e-12), 1.0, 1e-9);
}

TEST(DimensionEstimate, SlopeWithinUnitToTwo) {
    for (int k = 1; k < 100; ++k) {
        const auto e = dimension_estimate(Parameter<double>(k / 100.0), 1, 6);
        EXPECT_GE(e.slope, 1.0 - 1e-9);
        EXPECT_LE(e.slope, 2.0);
    }
}

TEST(SquareGrid, CrossCheckAgreesWithinFiveHundredths) {
    for (double a : {0.2, 0.5, 0.6, 2.0 / 3.0, 0.9}) {
        const auto sq = square_grid_dimension(Parameter<double>(a));
        EXPECT_NEAR(sq.slope, reference_dimension(a), 0.05) << a;
    }
}

TEST(SquareGrid, EveryColumnMeetsACell) {
    const auto counts = square_grid_counts(Parameter<double>(0.7), 1, 5, 7);
    for (unsigned j = 1; j <= 5; ++j) {
        EXPECT_GE(counts[j - 1], std::pow(3.0, j));
        EXPECT_LE(counts[j - 1], std::pow(9.0, j));
    }
    EXPECT_THROW(square_grid_counts(Parameter<double>(0.7), 1, 5, 4), domain_error);
}
