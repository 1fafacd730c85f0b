#include "stardomain/transforms.hpp"

#include "stardomain/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace stardomain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryTol = 1e-12;

} // namespace

RadialMap::RadialMap(RadialMapKind kind, StarDomain source, StarDomain target, double mu)
    : kind_(kind), source_(std::move(source)), target_(std::move(target)), mu_(mu) {}

RadialMap RadialMap::expansion(StarDomain domain) {
    StarDomain copy = domain;
    return RadialMap(RadialMapKind::ExpansionS, std::move(domain), std::move(copy), 0.0);
}

RadialMap RadialMap::gauge(StarDomain domain) {
    StarDomain copy = domain;
    return RadialMap(RadialMapKind::GaugeG, std::move(domain), std::move(copy), 0.0);
}

RadialMap RadialMap::composite(StarDomain source, StarDomain target) {
    return RadialMap(RadialMapKind::CompositeXi, std::move(source), std::move(target), 0.0);
}

RadialMap RadialMap::transfer(StarDomain source, StarDomain target, double mu) {
    const double R = source.metrics().R_out;
    if (!std::isfinite(mu) || !(mu > 0.0)) throw Error(ErrorCode::InvalidInput, "transfer mu must be positive");
    if (!(2.0 * mu < R)) throw Error(ErrorCode::InvalidInput, "transfer requires 2 mu < R_out of the source");
    const double sup = sup_radius_difference(source, target);
    if (!(sup < mu))
        throw Error(ErrorCode::InvalidInput, "transfer requires sup |s1 - s2| < mu (sup = " + std::to_string(sup) +
                                                 ", mu = " + std::to_string(mu) + ")");
    RadialMap map(RadialMapKind::Transfer, std::move(source), std::move(target), mu);
    map.blend_start_ = 1.0 - 2.0 * mu / R;
    return map;
}

double RadialMap::blend_radius(double tau, double r_source, double r_target) const {
    const double T = blend_start_;
    return tau * ((1.0 - tau) * r_source + (tau - T) * r_target) / (1.0 - T);
}

Point RadialMap::operator()(const Point& x) const {
    const double norm = x.norm();
    if (norm == 0.0) return Point::Zero();
    const Point u = x / norm;
    switch (kind_) {
    case RadialMapKind::ExpansionS: return (source_.expansion(x) / norm) * x;
    case RadialMapKind::GaugeG: return source_.gauge(x) * u;
    case RadialMapKind::CompositeXi: return (source_.gauge(x) * target_.radius(u)) * u;
    case RadialMapKind::Transfer: {
        const double tau = source_.gauge(x);
        if (tau > 1.0 + kBoundaryTol) throw Error(ErrorCode::OutOfDomain, "transfer input outside the source domain");
        if (tau <= blend_start_) return x;
        return blend_radius(std::min(tau, 1.0), source_.radius(u), target_.radius(u)) * u;
    }
    }
    return x;
}

Point RadialMap::inverse(const Point& y) const {
    const double norm = y.norm();
    if (norm == 0.0) return Point::Zero();
    const Point u = y / norm;
    switch (kind_) {
    case RadialMapKind::ExpansionS: return source_.gauge(y) * u;
    case RadialMapKind::GaugeG: return (source_.expansion(y) / norm) * y;
    case RadialMapKind::CompositeXi: return (target_.gauge(y) * source_.radius(u)) * u;
    case RadialMapKind::Transfer: {
        const double a = source_.radius(u);
        const double b = target_.radius(u);
        if (norm > b * (1.0 + kBoundaryTol))
            throw Error(ErrorCode::OutOfDomain, "transfer inverse input outside the target domain");
        const double T = blend_start_;
        if (norm <= T * a) return y;
        const double goal = std::min(norm, b);
        double lo = T;
        double hi = 1.0;
        while (hi - lo > 1e-12 * hi) {
            const double mid = 0.5 * (lo + hi);
            if (blend_radius(mid, a, b) < goal)
                lo = mid;
            else
                hi = mid;
        }
        return (0.5 * (lo + hi) * a) * u;
    }
    }
    return y;
}

double sup_radius_difference(const StarDomain& a, const StarDomain& b, std::size_t n_dirs) {
    double sup = 0.0;
    for (std::size_t i = 0; i < n_dirs; ++i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n_dirs);
        const Point u(std::cos(t), std::sin(t));
        sup = std::max(sup, std::abs(a.radius(u) - b.radius(u)));
    }
    return sup;
}

double select_transfer_mu(const StarDomain& source, const StarDomain& target) {
    return 1.05 * sup_radius_difference(source, target, 4096);
}

double theoretical_lipschitz_bound(const RadialMap& map, bool inverse) {
    const DomainMetrics& s = map.source().metrics();
    const DomainMetrics& t = map.target().metrics();
    switch (map.kind()) {
    case RadialMapKind::ExpansionS: return inverse ? 1.0 / s.r_in : s.R_out * s.R_out / s.rho;
    case RadialMapKind::GaugeG: return inverse ? s.R_out * s.R_out / s.rho : 1.0 / s.r_in;
    case RadialMapKind::CompositeXi:
        return inverse ? s.R_out * s.R_out / (t.rho * s.rho) : t.R_out * t.R_out / (t.rho * s.rho);
    case RadialMapKind::Transfer: {
        const double R = s.R_out;
        const double rho = s.rho;
        const double mu = map.mu();
        if (inverse) {
            if (!(rho > 2.0 * mu)) return std::numeric_limits<double>::infinity();
            return R * R / ((rho - 2.0 * mu) * rho);
        }
        if (!(rho > mu)) return std::numeric_limits<double>::infinity();
        return R / (2.0 * rho) + (R + mu) * (R + mu) / ((rho - mu) * rho);
    }
    }
    return std::numeric_limits<double>::infinity();
}

double theoretical_lipschitz_bound(ScalarFieldKind field, const DomainMetrics& m) {
    switch (field) {
    case ScalarFieldKind::Gauge: return 1.0 / m.rho;
    case ScalarFieldKind::Expansion: return m.R_out * m.R_out / m.rho;
    case ScalarFieldKind::OrientedDistance: return 1.0;
    }
    return std::numeric_limits<double>::infinity();
}

PairSampler::PairSampler(StarDomain region, std::uint64_t seed, bool restrict_to_region, double radius_factor)
    : region_(std::move(region)),
      rng_(seed, 0x7061697273),
      restrict_(restrict_to_region),
      radius_(radius_factor * region_.metrics().R_out) {}

Point PairSampler::uniform_point() {
    for (;;) {
        const Point p(rng_.uniform(-radius_, radius_), rng_.uniform(-radius_, radius_));
        if (p.squaredNorm() > radius_ * radius_) continue;
        if (restrict_ && !region_.contains(p)) continue;
        return p;
    }
}

Point PairSampler::offset_partner(const Point& base, double scale) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        const Point q = base + scale * Point(rng_.normal(), rng_.normal());
        if (!restrict_ || region_.contains(q)) return q;
        if (attempt % 8 == 7) scale *= 0.5;
    }
    return base + 0.5 * (uniform_point() - base) * 1e-3;
}

std::array<Point, 2> PairSampler::next() {
    static constexpr double kScales[3] = {1e-1, 1e-3, 1e-5};
    const std::uint64_t cls = drawn_++ % 4;
    const Point base = uniform_point();
    if (cls == 0) return {base, uniform_point()};
    return {base, offset_partner(base, kScales[cls - 1] * region_.metrics().R_out)};
}

namespace {

template <class Diff>
LipschitzReport sample_ratio(PairSampler& sampler, std::size_t pairs, double bound, Diff&& diff) {
    LipschitzReport report;
    report.theoretical_bound = bound;
    report.empirical_lower = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < pairs; ++i) {
        const auto [x, y] = sampler.next();
        const double dist = (x - y).norm();
        if (!(dist > 0.0)) continue;
        const double ratio = diff(x, y) / dist;
        ++report.sample_pairs;
        if (ratio > report.empirical) {
            report.empirical = ratio;
            report.witness = {x, y};
        }
        report.empirical_lower = std::min(report.empirical_lower, ratio);
    }
    if (report.sample_pairs == 0) report.empirical_lower = 0.0;
    report.pass = report.empirical <= bound * (1.0 + kLipschitzSlack);
    return report;
}

} // namespace

LipschitzReport sample_lipschitz(const VectorFunction& f, PairSampler& sampler, std::size_t pairs, double bound) {
    return sample_ratio(sampler, pairs, bound, [&](const Point& x, const Point& y) { return (f(x) - f(y)).norm(); });
}

LipschitzReport sample_lipschitz(const ScalarFunction& f, PairSampler& sampler, std::size_t pairs, double bound) {
    return sample_ratio(sampler, pairs, bound, [&](const Point& x, const Point& y) { return std::abs(f(x) - f(y)); });
}

LipschitzReport empirical_lipschitz(const RadialMap& map, const StarDomain& region, std::size_t pairs,
                                    std::uint64_t seed, bool inverse) {
    if (pairs < 2) throw Error(ErrorCode::InvalidInput, "empirical_lipschitz needs at least 2 pairs");
    PairSampler sampler(region, seed, map.kind() == RadialMapKind::Transfer);
    const double bound = theoretical_lipschitz_bound(map, inverse);
    if (inverse) return sample_lipschitz(VectorFunction([&](const Point& y) { return map.inverse(y); }), sampler, pairs, bound);
    return sample_lipschitz(VectorFunction([&](const Point& x) { return map(x); }), sampler, pairs, bound);
}

LipschitzReport scalar_lipschitz(ScalarFieldKind field, const StarDomain& domain, std::size_t pairs,
                                 std::uint64_t seed) {
    if (pairs < 2) throw Error(ErrorCode::InvalidInput, "scalar_lipschitz needs at least 2 pairs");
    PairSampler sampler(domain, seed, false, 1.5);
    return sample_lipschitz(ScalarFunction([&](const Point& x) { return domain.field(field, x); }), sampler, pairs,
                            theoretical_lipschitz_bound(field, domain.metrics()));
}

ChordAngleReport chord_angle_bounds_check(const StarDomain& domain, std::size_t pairs, std::uint64_t seed) {
    const DomainMetrics& m = domain.metrics();
    const double r = m.r_in;
    const double R = m.R_out;
    const double rho = m.rho;
    const double upper_factor = R * R / rho;
    const double magnitude_factor = (R / rho) * std::sqrt(std::max(0.0, R * R - rho * rho));
    const double tol = 1e-12 * R;
    static constexpr double kOffsets[3] = {1e-1, 1e-3, 1e-5};

    ChordAngleReport report;
    report.worst_lower_slack = std::numeric_limits<double>::infinity();
    report.worst_upper_slack = std::numeric_limits<double>::infinity();
    report.worst_magnitude_slack = std::numeric_limits<double>::infinity();

    CounterRng rng(seed, 0x63686f7264);
    for (std::size_t i = 0; i < pairs; ++i) {
        const double t1 = rng.uniform(0.0, kTwoPi);
        const std::size_t cls = i % 4;
        const double t2 = cls == 0 ? rng.uniform(0.0, kTwoPi) : t1 + kOffsets[cls - 1] * rng.normal();
        const Point x = domain.boundary_point(t1);
        const Point y = domain.boundary_point(t2);
        const double alpha = std::atan2(std::abs(x.x() * y.y() - x.y() * y.x()), x.dot(y));
        const double chord = (x - y).norm();

        const double lower_slack = chord - r * (2.0 / std::numbers::pi) * alpha;
        const double upper_slack = upper_factor * alpha - chord;
        const double magnitude_slack = magnitude_factor * alpha - std::abs(x.norm() - y.norm());
        report.worst_lower_slack = std::min(report.worst_lower_slack, lower_slack);
        report.worst_upper_slack = std::min(report.worst_upper_slack, upper_slack);
        report.worst_magnitude_slack = std::min(report.worst_magnitude_slack, magnitude_slack);
        if (lower_slack < -tol) ++report.lower_violations;
        if (upper_slack < -tol) ++report.upper_violations;
        if (magnitude_slack < -tol) ++report.magnitude_violations;
        ++report.pairs;
    }
    report.pass = report.lower_violations == 0 && report.upper_violations == 0 && report.magnitude_violations == 0;
    return report;
}

} // namespace stardomain
