#include "oracles.hpp"

#include <stardomain/error.hpp>
#include <stardomain/geometry.hpp>
#include <stardomain/random.hpp>

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace stardomain;

namespace {

constexpr double kPi = std::numbers::pi;

StarDomain notched_radial() {
    // star-shaped about the origin but with a deep notch around angle 0
    std::vector<double> angles;
    std::vector<double> radii;
    const int n = 64;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        angles.push_back(t);
        const double d = std::min(t, 2.0 * kPi - t);
        radii.push_back(d < 0.35 ? 0.45 : 1.0);
    }
    return StarDomain::radial(angles, radii);
}

Point random_point(CounterRng& rng, double scale) { return {rng.uniform(-scale, scale), rng.uniform(-scale, scale)}; }

} // namespace

TEST(DomainMetrics, UnitDisk) {
    const auto m = StarDomain::ball(1.0).metrics();
    EXPECT_DOUBLE_EQ(m.rho, 1.0);
    EXPECT_DOUBLE_EQ(m.r_in, 1.0);
    EXPECT_DOUBLE_EQ(m.R_out, 1.0);
    EXPECT_DOUBLE_EQ(m.diameter, 2.0);
    EXPECT_NEAR(m.area, kPi, 1e-14);
}

TEST(DomainMetrics, Square) {
    const auto m = make_square(1.0).metrics();
    EXPECT_NEAR(m.rho, 1.0, 1e-14);
    EXPECT_NEAR(m.r_in, 1.0, 1e-14);
    EXPECT_NEAR(m.R_out, std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(m.diameter, 2.0 * std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(m.area, 4.0, 1e-14);
}

TEST(DomainMetrics, ConstantRadialSpline) {
    std::vector<double> angles;
    for (int i = 0; i < 32; ++i) angles.push_back(2.0 * kPi * i / 32);
    const auto m = StarDomain::radial(angles, std::vector<double>(32, 3.0)).metrics();
    EXPECT_NEAR(m.rho, 3.0, 1e-12);
    EXPECT_NEAR(m.r_in, 3.0, 1e-12);
    EXPECT_NEAR(m.R_out, 3.0, 1e-12);
}

TEST(DomainMetrics, BruteForceOverEdgesForRandomPolygons) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto d = make_random_convex_polygon(8, seed);
        const auto v = d.vertices();
        double rho = 1e300, R = 0.0, r = 1e300, diam = 0.0, area = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % v.size()];
            rho = std::min(rho, std::abs(oracle::cross(b - a, -a)) / (b - a).norm());
            r = std::min(r, oracle::segment_distance(a, b, Point::Zero()));
            R = std::max(R, a.norm());
            area += 0.5 * oracle::cross(a, b);
            for (const Point& c : v) diam = std::max(diam, (a - c).norm());
        }
        const auto& m = d.metrics();
        EXPECT_NEAR(m.rho, rho, 1e-12);
        EXPECT_NEAR(m.r_in, r, 1e-12);
        EXPECT_NEAR(m.R_out, R, 1e-12);
        EXPECT_NEAR(m.diameter, diam, 1e-12);
        EXPECT_NEAR(m.area, area, 1e-12);
        EXPECT_LE(m.rho, m.r_in + 1e-15);
        EXPECT_LE(m.r_in, m.R_out);
        EXPECT_LE(m.R_out, m.diameter);
        EXPECT_LE(m.diameter, 2.0 * m.R_out + 1e-15);
    }
}

TEST(DomainValidation, RejectsBadPolygons) {
    auto code_of = [](auto f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidInput;
    };
    // clockwise
    EXPECT_EQ(code_of([] { StarDomain::polygon({{-1, -1}, {-1, 1}, {1, 1}, {1, -1}}); }), ErrorCode::InvalidDomain);
    // collinear triple
    EXPECT_EQ(code_of([] { StarDomain::polygon({{-1, -1}, {0, -1}, {1, -1}, {1, 1}, {-1, 1}}); }),
              ErrorCode::InvalidDomain);
    // origin outside
    EXPECT_EQ(code_of([] { StarDomain::polygon({{1, 1}, {2, 1}, {2, 2}, {1, 2}}); }), ErrorCode::InvalidDomain);
    // non-convex
    EXPECT_EQ(code_of([] { StarDomain::polygon({{-1, -1}, {1, -1}, {0.1, 0}, {1, 1}, {-1, 1}}); }),
              ErrorCode::InvalidDomain);
    EXPECT_THROW(StarDomain::ball(0.0), Error);
    EXPECT_THROW(StarDomain::radial({0.0, 1.0, 0.5}, {1.0, 1.0, 1.0}), Error);
    EXPECT_THROW(StarDomain::radial({0.0, 2.0, 4.0}, {1.0, -1.0, 1.0}), Error);
}

TEST(Gauge, Examples) {
    EXPECT_DOUBLE_EQ(StarDomain::ball(1.0).gauge({2.0, 0.0}), 2.0);
    EXPECT_EQ(make_square(1.0).gauge(Point::Zero()), 0.0);
    EXPECT_EQ(notched_radial().gauge(Point::Zero()), 0.0);
    EXPECT_NEAR(make_square(1.0).gauge({0.5, 0.5}), 0.5, 1e-15);
}

TEST(Gauge, MatchesBisectionOracle) {
    CounterRng rng(11);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = make_random_convex_polygon(7, seed);
        for (int i = 0; i < 200; ++i) {
            const Point x = random_point(rng, 3.0);
            EXPECT_NEAR(d.gauge(x), oracle::gauge_by_bisection(d.vertices(), x), 1e-12 * (1.0 + x.norm()));
        }
    }
}

TEST(Expansion, Examples) {
    EXPECT_DOUBLE_EQ(StarDomain::ball(3.0).expansion(Point(0.6, 0.8)), 3.0);
    EXPECT_NEAR(make_square(1.0).expansion({1.0, 0.0}), 1.0, 1e-15);
    EXPECT_NEAR(make_square(1.0).expansion(Point(1.0, 1.0).normalized()), std::sqrt(2.0), 1e-14);
    EXPECT_EQ(make_square(1.0).expansion(Point::Zero()), 0.0);
}

TEST(OrientedDistance, Examples) {
    const auto disk = StarDomain::ball(1.0);
    EXPECT_DOUBLE_EQ(disk.oriented_distance({2.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(disk.oriented_distance(Point::Zero()), -1.0);
    EXPECT_NEAR(make_square(1.0).oriented_distance({2.0, 2.0}), std::sqrt(2.0), 1e-15);
}

TEST(OrientedDistance, PolygonMatchesSegmentOracle) {
    CounterRng rng(5);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = make_random_convex_polygon(9, seed);
        for (int i = 0; i < 300; ++i) {
            const Point x = random_point(rng, 2.5);
            EXPECT_NEAR(d.oriented_distance(x), oracle::polygon_oriented_distance(d.vertices(), x), 1e-13);
        }
    }
}

TEST(OrientedDistance, RadialSplineWithinSamplingTolerance) {
    // a radial spline through the vertices of a polygon traces the same
    // boundary only at the knots, so compare against a fine polygon instead
    const int n = 512;
    std::vector<double> angles;
    std::vector<double> radii;
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
        const double t = 2.0 * kPi * i / n;
        const double r = 1.0 / std::sqrt(std::pow(std::cos(t) / 2.0, 2) + std::pow(std::sin(t), 2));
        angles.push_back(t);
        radii.push_back(r);
    }
    const auto spline = StarDomain::radial(angles, radii);
    // boundary of the spline sampled very densely; the knots are corners and
    // must be included or the oracle cuts them
    std::vector<double> ts(angles);
    for (int i = 0; i < 20000; ++i) ts.push_back(2.0 * kPi * i / 20000);
    std::sort(ts.begin(), ts.end());
    for (double t : ts) pts.push_back(spline.boundary_point(t));
    CounterRng rng(3);
    const double tol = 1e-6 * spline.metrics().R_out;
    for (int i = 0; i < 300; ++i) {
        const Point x = random_point(rng, 3.0);
        double d = 1e300;
        for (std::size_t k = 0; k < pts.size(); ++k) d = std::min(d, oracle::segment_distance(pts[k], pts[(k + 1) % pts.size()], x));
        const double expected = spline.contains(x) ? -d : d;
        EXPECT_NEAR(spline.oriented_distance(x), expected, tol) << x.transpose();
    }
}

TEST(ScalarFields, HomogeneityAndReciprocalIdentity) {
    CounterRng rng(42);
    const StarDomain domains[] = {StarDomain::ball(1.3), make_square(1.0), make_random_convex_polygon(6, 3),
                                  notched_radial()};
    for (const auto& d : domains) {
        for (int i = 0; i < 500; ++i) {
            const Point x = random_point(rng, 2.0);
            if (x.norm() < 1e-6) continue;
            const double t = rng.uniform(1e-3, 10.0);
            EXPECT_NEAR(d.gauge(t * x), t * d.gauge(x), 1e-9 * t * d.gauge(x));
            EXPECT_NEAR(d.expansion(t * x), t * d.expansion(x), 1e-9 * t * d.expansion(x));
            EXPECT_NEAR(d.expansion(x) * d.gauge(x), x.squaredNorm(), 1e-9 * x.squaredNorm());
            const Point u = x.normalized();
            EXPECT_GE(d.radius(u), d.metrics().rho - 1e-12);
            EXPECT_LE(d.radius(u), d.metrics().R_out + 1e-12);
        }
    }
}

TEST(ScalarFields, BoundaryCalibration) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto d = make_random_convex_polygon(10, seed);
        const auto v = d.vertices();
        for (std::size_t i = 0; i < v.size(); ++i)
            for (double s : {0.0, 0.25, 0.5, 0.9}) {
                const Point b = (1.0 - s) * v[i] + s * v[(i + 1) % v.size()];
                EXPECT_NEAR(d.gauge(b), 1.0, 1e-9);
                EXPECT_NEAR(d.oriented_distance(b), 0.0, 1e-12);
            }
    }
}

TEST(ScalarFields, GaugeAndDistanceConvexOnConvexDomains) {
    CounterRng rng(99);
    const StarDomain domains[] = {make_square(1.0), make_ellipse_polygon(2.0, 1.0, 256), make_random_convex_polygon(8, 1)};
    for (const auto& d : domains) {
        for (int i = 0; i < 10000 / 3; ++i) {
            const Point x = random_point(rng, 3.0);
            const Point y = random_point(rng, 3.0);
            const double t = rng.uniform();
            const Point z = t * x + (1 - t) * y;
            EXPECT_LE(d.gauge(z), t * d.gauge(x) + (1 - t) * d.gauge(y) + 1e-9);
            EXPECT_LE(d.oriented_distance(z), t * d.oriented_distance(x) + (1 - t) * d.oriented_distance(y) + 1e-9);
            EXPECT_LE(std::abs(d.oriented_distance(x) - d.oriented_distance(y)), (x - y).norm() + 1e-9);
        }
    }
}

TEST(StarShaped, Examples) {
    const auto square = make_square(1.0);
    EXPECT_TRUE(is_star_shaped_wrt_ball(square, 0.5));
    EXPECT_TRUE(is_star_shaped_wrt_ball(square, 1.0));
    EXPECT_FALSE(is_star_shaped_wrt_ball(square, 1.5));
    const auto notch = notched_radial();
    EXPECT_FALSE(is_star_shaped_wrt_ball(notch, 0.9 * notch.metrics().r_in));
    EXPECT_TRUE(is_star_shaped_wrt_ball(notch, 0.5 * notch.metrics().rho));
    EXPECT_FALSE(notch.is_convex());
}

TEST(StarShaped, SegmentMembershipOracleAgreesOnRadialSpline) {
    // sample segments from ball points to boundary points and test membership
    const auto notch = notched_radial();
    auto oracle_test = [&](double rho_test) {
        for (int i = 0; i < 256; ++i) {
            const Point b = notch.boundary_point(2.0 * kPi * i / 256);
            for (int j = 0; j < 16; ++j) {
                const double a = 2.0 * kPi * j / 16;
                const Point c(rho_test * std::cos(a), rho_test * std::sin(a));
                for (int s = 1; s < 64; ++s) {
                    const Point p = c + (b - c) * (s / 64.0);
                    if (!notch.contains(p, 1e-9)) return false;
                }
            }
        }
        return true;
    };
    for (double rho_test : {0.1, 0.3, 0.9 * notch.metrics().r_in})
        EXPECT_EQ(is_star_shaped_wrt_ball(notch, rho_test), oracle_test(rho_test)) << rho_test;
}

TEST(Domain, ScalingMultipliesMetrics) {
    const auto d = make_random_convex_polygon(8, 4);
    const auto s = d.scaled(2.0);
    EXPECT_NEAR(s.metrics().rho, 2.0 * d.metrics().rho, 1e-13);
    EXPECT_NEAR(s.metrics().R_out, 2.0 * d.metrics().R_out, 1e-13);
    EXPECT_NEAR(s.metrics().area, 4.0 * d.metrics().area, 1e-12);
    EXPECT_NEAR(s.gauge({0.3, 0.2}), 0.5 * d.gauge({0.3, 0.2}), 1e-14);
}
