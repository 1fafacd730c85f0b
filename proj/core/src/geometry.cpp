#include "stardomain/geometry.hpp"

#include "stardomain/error.hpp"
#include "stardomain/random.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stardomain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

double point_segment_distance(const Point& x, const Point& a, const Point& b) {
    const Point ab = b - a;
    const double len2 = ab.squaredNorm();
    double t = len2 > 0.0 ? (x - a).dot(ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return (x - (a + t * ab)).norm();
}

// Convex hull (monotone chain) followed by brute-force max distance.
double point_set_diameter(std::vector<Point> pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    std::vector<Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const Point& p : pts) {
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        const Point& p = pts[i];
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
        hull[k++] = p;
    }
    hull.resize(k > 1 ? k - 1 : k);
    double diam = 0.0;
    for (std::size_t i = 0; i < hull.size(); ++i)
        for (std::size_t j = i + 1; j < hull.size(); ++j) diam = std::max(diam, (hull[i] - hull[j]).norm());
    return diam;
}

} // namespace

struct StarDomain::Impl {
    DomainKind kind = DomainKind::Ball;
    DomainMetrics metrics;

    // ConvexPolygon
    std::vector<Point> vertices;
    std::vector<Point> normals; // outward unit normals per edge i -> i+1
    std::vector<double> support;  // distance from origin to edge lines

    // RadialSpline
    std::vector<double> angles;
    std::vector<double> radii;
    std::vector<double> sample_angles; // dense sampling incl. knots
    std::vector<Point> samples;

    // Ball
    double ball_radius = 0.0;

    std::size_t piece_of(double theta) const {
        // theta already normalized into [angles.front(), angles.front() + 2pi)
        auto it = std::upper_bound(angles.begin(), angles.end(), theta);
        return static_cast<std::size_t>(it - angles.begin()) - 1;
    }

    double normalize(double theta) const {
        const double base = angles.front();
        double t = std::fmod(theta - base, kTwoPi);
        if (t < 0.0) t += kTwoPi;
        if (t >= kTwoPi) t = 0.0;
        return base + t;
    }

    // Piece i spans [angles[i], angles[i+1]) with wrap-around for the last.
    void piece(std::size_t i, double& a0, double& a1, double& r0, double& r1) const {
        const std::size_t n = angles.size();
        a0 = angles[i];
        r0 = radii[i];
        if (i + 1 < n) {
            a1 = angles[i + 1];
            r1 = radii[i + 1];
        } else {
            a1 = angles[0] + kTwoPi;
            r1 = radii[0];
        }
    }

    double spline_radius(double theta) const {
        const double t = normalize(theta);
        const std::size_t i = piece_of(t);
        double a0, a1, r0, r1;
        piece(i, a0, a1, r0, r1);
        const double w = (t - a0) / (a1 - a0);
        return (1.0 - w) * r0 + w * r1;
    }

    double polygon_gauge(const Point& x) const {
        double g = 0.0;
        for (std::size_t e = 0; e < normals.size(); ++e) g = std::max(g, normals[e].dot(x) / support[e]);
        return g;
    }

    double radial_distance(const Point& x) const;
};

double StarDomain::Impl::radial_distance(const Point& x) const {
    const std::size_t m = samples.size();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double d = point_segment_distance(x, samples[i], samples[(i + 1) % m]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    auto curve = [&](double th) {
        const double r = spline_radius(th);
        return Point(r * std::cos(th), r * std::sin(th));
    };
    // Newton on |c(theta) - x|^2 along chord i, where c is a single linear
    // piece r(theta) (cos, sin); theta stays within the chord's angle range.
    auto polish = [&](std::size_t i) {
        const double ta = sample_angles[i];
        double tb = sample_angles[(i + 1) % m];
        if (tb <= ta) tb += kTwoPi;
        const Point a = samples[i];
        const Point ab = samples[(i + 1) % m] - a;
        const double s = std::clamp((x - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
        double theta = ta + s * (tb - ta);

        double a0, a1, r0, r1;
        piece(piece_of(normalize(0.5 * (ta + tb))), a0, a1, r0, r1);
        const double slope = (r1 - r0) / (a1 - a0);

        double result = std::min((curve(ta) - x).norm(), (curve(tb) - x).norm());
        for (int iter = 0; iter < 8; ++iter) {
            result = std::min(result, (curve(theta) - x).norm());
            const double r = spline_radius(theta);
            const Point radial(std::cos(theta), std::sin(theta));
            const Point tangential(-radial.y(), radial.x());
            const Point c = r * radial;
            const Point c1 = slope * radial + r * tangential;
            const Point c2 = 2.0 * slope * tangential - r * radial;
            const double f = (c - x).dot(c1);
            const double df = c1.squaredNorm() + (c - x).dot(c2);
            if (!(df > 0.0)) break;
            const double next = std::clamp(theta - f / df, ta, tb);
            if (std::abs(next - theta) < 1e-15 * kTwoPi) break;
            theta = next;
        }
        return std::min(result, (curve(theta) - x).norm());
    };
    return std::min({polish(best), polish((best + 1) % m), polish((best + m - 1) % m)});
}

StarDomain StarDomain::polygon(std::vector<Point> vertices) {
    const std::size_t n = vertices.size();
    if (n < 3) throw Error(ErrorCode::InvalidDomain, "polygon needs at least 3 vertices");
    for (const Point& v : vertices)
        if (!v.allFinite()) throw Error(ErrorCode::InvalidDomain, "polygon vertex is not finite");

    auto impl = std::make_shared<Impl>();
    impl->kind = DomainKind::ConvexPolygon;
    impl->normals.resize(n);
    impl->support.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Point e0 = vertices[(i + 1) % n] - vertices[i];
        const Point e1 = vertices[(i + 2) % n] - vertices[(i + 1) % n];
        const double len = e0.norm();
        if (!(len > 0.0)) throw Error(ErrorCode::InvalidDomain, "polygon has repeated vertices");
        if (!(cross(e0, e1) > 1e-12 * len * e1.norm()))
            throw Error(ErrorCode::InvalidDomain,
                        "polygon vertices are not in strictly convex counterclockwise position at vertex " +
                            std::to_string((i + 1) % n));
        const Point normal(e0.y() / len, -e0.x() / len);
        const double h = normal.dot(vertices[i]);
        if (!(h > 0.0)) throw Error(ErrorCode::InvalidDomain, "origin is not strictly inside the polygon");
        impl->normals[i] = normal;
        impl->support[i] = h;
    }
    // Strict convexity of consecutive turns does not rule out a polygon that
    // winds more than once around the origin.
    double winding = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        winding += std::atan2(cross(a, b), a.dot(b));
    }
    if (std::abs(winding - kTwoPi) > 1e-6)
        throw Error(ErrorCode::InvalidDomain, "polygon does not wind once around the origin");

    DomainMetrics& m = impl->metrics;
    m.rho = *std::min_element(impl->support.begin(), impl->support.end());
    m.r_in = std::numeric_limits<double>::infinity();
    m.R_out = 0.0;
    m.area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = vertices[i];
        const Point& b = vertices[(i + 1) % n];
        m.r_in = std::min(m.r_in, point_segment_distance(Point::Zero(), a, b));
        m.R_out = std::max(m.R_out, a.norm());
        m.area += 0.5 * cross(a, b);
        for (std::size_t j = i + 1; j < n; ++j) m.diameter = std::max(m.diameter, (a - vertices[j]).norm());
    }
    impl->vertices = std::move(vertices);
    return StarDomain(std::move(impl));
}

StarDomain StarDomain::radial(std::vector<double> angles, std::vector<double> radii) {
    const std::size_t n = angles.size();
    if (n < 3 || radii.size() != n)
        throw Error(ErrorCode::InvalidDomain, "radial spline needs matching angle/radius lists of length >= 3");
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(angles[i]) || angles[i] < 0.0 || angles[i] >= kTwoPi)
            throw Error(ErrorCode::InvalidDomain, "radial spline angles must lie in [0, 2pi)");
        if (i > 0 && !(angles[i] > angles[i - 1]))
            throw Error(ErrorCode::InvalidDomain, "radial spline angles must be strictly increasing");
        if (!std::isfinite(radii[i]) || !(radii[i] > 0.0))
            throw Error(ErrorCode::InvalidDomain, "radial spline radii must be positive");
    }

    auto impl = std::make_shared<Impl>();
    impl->kind = DomainKind::RadialSpline;
    impl->angles = std::move(angles);
    impl->radii = std::move(radii);

    // Dense sampling: uniform grid merged with the knots, so every chord lies
    // inside a single linear piece.
    std::vector<double> th;
    th.reserve(kRadialDistanceSamples + n);
    for (std::size_t i = 0; i < kRadialDistanceSamples; ++i)
        th.push_back(kTwoPi * static_cast<double>(i) / static_cast<double>(kRadialDistanceSamples));
    th.insert(th.end(), impl->angles.begin(), impl->angles.end());
    std::sort(th.begin(), th.end());
    th.erase(std::unique(th.begin(), th.end(), [](double a, double b) { return std::abs(a - b) < 1e-14; }),
             th.end());
    impl->sample_angles = th;
    impl->samples.reserve(th.size());
    for (double t : th) {
        const double r = impl->spline_radius(t);
        impl->samples.emplace_back(r * std::cos(t), r * std::sin(t));
    }

    DomainMetrics& m = impl->metrics;
    m.r_in = *std::min_element(impl->radii.begin(), impl->radii.end());
    m.R_out = *std::max_element(impl->radii.begin(), impl->radii.end());
    m.rho = std::numeric_limits<double>::infinity();
    m.area = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a0, a1, r0, r1;
        impl->piece(i, a0, a1, r0, r1);
        const double slope = (r1 - r0) / (a1 - a0);
        // distance from the origin to the tangent line is r^2 / sqrt(r'^2 + r^2),
        // increasing in r, so the minimum over a piece sits at its smaller end
        const double r = std::min(r0, r1);
        m.rho = std::min(m.rho, r * r / std::sqrt(slope * slope + r * r));
        m.area += (a1 - a0) * (r0 * r0 + r0 * r1 + r1 * r1) / 6.0;
    }
    m.diameter = point_set_diameter(impl->samples);
    return StarDomain(std::move(impl));
}

StarDomain StarDomain::ball(double radius) {
    if (!std::isfinite(radius) || !(radius > 0.0)) throw Error(ErrorCode::InvalidDomain, "ball radius must be positive");
    auto impl = std::make_shared<Impl>();
    impl->kind = DomainKind::Ball;
    impl->ball_radius = radius;
    impl->metrics = DomainMetrics{radius, radius, radius, 2.0 * radius, std::numbers::pi * radius * radius};
    return StarDomain(std::move(impl));
}

DomainKind StarDomain::kind() const noexcept { return impl_->kind; }
const DomainMetrics& StarDomain::metrics() const noexcept { return impl_->metrics; }
std::span<const Point> StarDomain::vertices() const noexcept { return impl_->vertices; }
std::span<const double> StarDomain::angles() const noexcept { return impl_->angles; }
std::span<const double> StarDomain::radii() const noexcept { return impl_->radii; }
double StarDomain::ball_radius() const noexcept { return impl_->ball_radius; }

double StarDomain::radius(double angle) const {
    return radius(Point(std::cos(angle), std::sin(angle)));
}

double StarDomain::radius(const Point& direction) const {
    const Impl& d = *impl_;
    switch (d.kind) {
    case DomainKind::Ball: return d.ball_radius;
    case DomainKind::ConvexPolygon: {
        const Point u = direction.normalized();
        return 1.0 / d.polygon_gauge(u);
    }
    case DomainKind::RadialSpline: return d.spline_radius(std::atan2(direction.y(), direction.x()));
    }
    return 0.0;
}

Point StarDomain::boundary_point(double angle) const {
    const Point u(std::cos(angle), std::sin(angle));
    return radius(u) * u;
}

double StarDomain::gauge(const Point& x) const {
    const Impl& d = *impl_;
    const double norm = x.norm();
    if (norm == 0.0) return 0.0;
    switch (d.kind) {
    case DomainKind::Ball: return norm / d.ball_radius;
    case DomainKind::ConvexPolygon: return d.polygon_gauge(x);
    case DomainKind::RadialSpline: return norm / d.spline_radius(std::atan2(x.y(), x.x()));
    }
    return 0.0;
}

double StarDomain::expansion(const Point& x) const {
    const Impl& d = *impl_;
    const double norm = x.norm();
    if (norm == 0.0) return 0.0;
    switch (d.kind) {
    case DomainKind::Ball: return norm * d.ball_radius;
    case DomainKind::ConvexPolygon: return x.squaredNorm() / d.polygon_gauge(x);
    case DomainKind::RadialSpline: return norm * d.spline_radius(std::atan2(x.y(), x.x()));
    }
    return 0.0;
}

double StarDomain::oriented_distance(const Point& x) const {
    const Impl& d = *impl_;
    if (d.kind == DomainKind::Ball) return x.norm() - d.ball_radius;

    double dist = 0.0;
    if (d.kind == DomainKind::ConvexPolygon) {
        dist = std::numeric_limits<double>::infinity();
        const std::size_t n = d.vertices.size();
        for (std::size_t i = 0; i < n; ++i)
            dist = std::min(dist, point_segment_distance(x, d.vertices[i], d.vertices[(i + 1) % n]));
    } else {
        dist = d.radial_distance(x);
    }
    return gauge(x) <= 1.0 ? -dist : dist;
}

double StarDomain::field(ScalarFieldKind kind, const Point& x) const {
    switch (kind) {
    case ScalarFieldKind::Gauge: return gauge(x);
    case ScalarFieldKind::Expansion: return expansion(x);
    case ScalarFieldKind::OrientedDistance: return oriented_distance(x);
    }
    return 0.0;
}

bool StarDomain::contains(const Point& x, double tol) const { return gauge(x) <= 1.0 + tol; }

bool StarDomain::is_convex() const {
    const Impl& d = *impl_;
    if (d.kind != DomainKind::RadialSpline) return true;
    const std::size_t m = d.samples.size();
    const double scale = d.metrics.R_out * d.metrics.R_out;
    for (std::size_t i = 0; i < m; ++i) {
        const Point e0 = d.samples[(i + 1) % m] - d.samples[i];
        const Point e1 = d.samples[(i + 2) % m] - d.samples[(i + 1) % m];
        if (cross(e0, e1) < -1e-12 * scale) return false;
    }
    return true;
}

StarDomain StarDomain::scaled(double factor) const {
    if (!std::isfinite(factor) || !(factor > 0.0)) throw Error(ErrorCode::InvalidInput, "scale factor must be positive");
    const Impl& d = *impl_;
    switch (d.kind) {
    case DomainKind::Ball: return ball(factor * d.ball_radius);
    case DomainKind::ConvexPolygon: {
        std::vector<Point> v = d.vertices;
        for (Point& p : v) p *= factor;
        return polygon(std::move(v));
    }
    case DomainKind::RadialSpline: {
        std::vector<double> r = d.radii;
        for (double& x : r) x *= factor;
        return radial(d.angles, std::move(r));
    }
    }
    return *this;
}

bool is_star_shaped_wrt_ball(const StarDomain& domain, double rho_test, std::size_t n_dirs) {
    if (!std::isfinite(rho_test) || !(rho_test > 0.0))
        throw Error(ErrorCode::InvalidInput, "rho_test must be positive");
    const DomainMetrics& m = domain.metrics();
    switch (domain.kind()) {
    case DomainKind::Ball:
    case DomainKind::ConvexPolygon: return rho_test <= m.rho;
    case DomainKind::RadialSpline: break;
    }
    if (n_dirs < 4) throw Error(ErrorCode::InvalidInput, "n_dirs must be at least 4");

    std::vector<Point> ball_pts{Point::Zero()};
    std::vector<Point> boundary_pts;
    for (std::size_t i = 0; i < n_dirs; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n_dirs);
        ball_pts.emplace_back(rho_test * std::cos(t), rho_test * std::sin(t));
        boundary_pts.push_back(domain.boundary_point(t));
    }
    for (double t : domain.angles()) boundary_pts.push_back(domain.boundary_point(t));

    constexpr int kSegmentSamples = 64;
    constexpr double kTol = 1e-9;
    for (const Point& p : ball_pts) {
        if (!domain.contains(p, kTol)) return false;
        for (const Point& b : boundary_pts) {
            for (int s = 1; s < kSegmentSamples; ++s) {
                const double w = static_cast<double>(s) / kSegmentSamples;
                if (!domain.contains((1.0 - w) * p + w * b, kTol)) return false;
            }
        }
    }
    return true;
}

StarDomain make_rectangle(double half_width, double half_height) {
    return StarDomain::polygon({Point(-half_width, -half_height), Point(half_width, -half_height),
                                Point(half_width, half_height), Point(-half_width, half_height)});
}

StarDomain make_square(double half_side) { return make_rectangle(half_side, half_side); }

StarDomain make_ellipse_polygon(double a, double b, std::size_t n) {
    std::vector<Point> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        v.emplace_back(a * std::cos(t), b * std::sin(t));
    }
    return StarDomain::polygon(std::move(v));
}

StarDomain make_random_convex_polygon(std::size_t n, std::uint64_t seed) {
    if (n < 3) throw Error(ErrorCode::InvalidInput, "random polygon needs n >= 3");
    CounterRng rng(seed, 0x706f6c79);
    const double a = rng.uniform(0.8, 1.6);
    const double b = rng.uniform(0.6, 1.2);
    const double rot = rng.uniform(0.0, kTwoPi);
    const Eigen::Rotation2Dd rotation(rot);
    std::vector<Point> v;
    v.reserve(n);
    // jittered angles keep every gap below pi, so the origin stays interior
    for (std::size_t i = 0; i < n; ++i) {
        const double t = kTwoPi * (static_cast<double>(i) + 0.6 * rng.uniform()) / static_cast<double>(n);
        v.push_back(rotation * Point(a * std::cos(t), b * std::sin(t)));
    }
    return StarDomain::polygon(std::move(v));
}

} // namespace stardomain
