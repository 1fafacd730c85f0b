#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace stardomain {

using Point = Eigen::Vector2d;

enum class DomainKind { ConvexPolygon, RadialSpline, Ball };

enum class ScalarFieldKind { Gauge, Expansion, OrientedDistance };

/// Radii of a centered domain: kernel ball `rho`, inscribed radius `r_in`,
/// circumradius `R_out` (all about the origin).
struct DomainMetrics {
    double rho = 0.0;
    double r_in = 0.0;
    double R_out = 0.0;
    double diameter = 0.0;
    double area = 0.0;
};

/// Number of boundary samples used for distance queries on radial splines.
inline constexpr std::size_t kRadialDistanceSamples = 4096;

/**
 * Immutable description of a bounded domain that is centered, i.e. contains
 * the origin in its interior and is star-shaped with respect to a ball about
 * it. Copies share storage.
 *
 * Three boundary representations are supported: a strictly convex polygon
 * given counterclockwise, a radial spline r(theta) that is piecewise linear in
 * the angle, and a disk.
 */
class StarDomain {
public:
    /// Throws Error(InvalidDomain) unless the vertices are in strictly convex
    /// counterclockwise position around the origin.
    static StarDomain polygon(std::vector<Point> vertices);
    /// Angles strictly increasing in [0, 2pi), radii positive.
    static StarDomain radial(std::vector<double> angles, std::vector<double> radii);
    static StarDomain ball(double radius);

    DomainKind kind() const noexcept;
    const DomainMetrics& metrics() const noexcept;

    std::span<const Point> vertices() const noexcept;
    std::span<const double> angles() const noexcept;
    std::span<const double> radii() const noexcept;
    double ball_radius() const noexcept;

    /// Boundary radius along the ray at `angle`; the sphere restriction of
    /// the expansion function.
    double radius(double angle) const;
    double radius(const Point& direction) const;
    Point boundary_point(double angle) const;

    /// Minkowski functional: inf{s > 0 : x in s * Omega}.
    double gauge(const Point& x) const;
    /// Reciprocal radial function, |x| * radius(x / |x|).
    double expansion(const Point& x) const;
    /// Signed distance to the boundary, negative on the closure.
    double oriented_distance(const Point& x) const;
    double field(ScalarFieldKind kind, const Point& x) const;

    /// Membership of the closure, gauge(x) <= 1 + tol.
    bool contains(const Point& x, double tol = 0.0) const;

    /// True for polygons and disks; for radial splines, tests convexity of
    /// the boundary curve (turn directions of a dense sampling).
    bool is_convex() const;

    StarDomain scaled(double factor) const;

private:
    struct Impl;
    explicit StarDomain(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Sampled test of star-shapedness with respect to the disk of radius
/// `rho_test` about the origin. Exact for polygons and disks.
bool is_star_shaped_wrt_ball(const StarDomain& domain, double rho_test, std::size_t n_dirs = 64);

// Shape factories used by tests, tools and benchmarks.
StarDomain make_rectangle(double half_width, double half_height);
StarDomain make_square(double half_side);
/// Regular sampling of the ellipse x^2/a^2 + y^2/b^2 = 1 as an n-gon.
StarDomain make_ellipse_polygon(double a, double b, std::size_t n);
/// Seeded convex n-gon inscribed in a randomly rotated ellipse.
StarDomain make_random_convex_polygon(std::size_t n, std::uint64_t seed);

} // namespace stardomain
