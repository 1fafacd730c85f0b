#include "stardomain/approximation.hpp"

#include "stardomain/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace stardomain {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
void gauss_legendre(std::size_t n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 1.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            if (n == 1) p0 = 1.0;
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

} // namespace

Mollifier::Mollifier(double epsilon, std::size_t quad_order) : epsilon_(epsilon), quad_order_(quad_order) {
    if (!std::isfinite(epsilon) || !(epsilon > 0.0)) throw Error(ErrorCode::InvalidInput, "epsilon must be positive");
    if (quad_order < 2) throw Error(ErrorCode::InvalidInput, "quad_order must be at least 2");

    std::vector<double> nodes;
    std::vector<double> gl_weights;
    gauss_legendre(quad_order, nodes, gl_weights);
    const std::size_t n_angles = 2 * quad_order;
    const double angle_weight = kTwoPi / static_cast<double>(n_angles);

    offsets_.reserve(quad_order * n_angles);
    weights_.reserve(quad_order * n_angles);
    for (std::size_t i = 0; i < quad_order; ++i) {
        const double r = 0.5 * epsilon * (1.0 + nodes[i]);
        const double wr = 0.5 * epsilon * gl_weights[i];
        for (std::size_t j = 0; j < n_angles; ++j) {
            const double t = angle_weight * (static_cast<double>(j) + 0.5);
            const Point z(r * std::cos(t), r * std::sin(t));
            const double w = density(z) * r * wr * angle_weight;
            offsets_.push_back(z);
            weights_.push_back(w);
            raw_mass_ += w;
        }
    }
    for (double& w : weights_) w /= raw_mass_;
}

double Mollifier::density(const Point& z) const {
    const double q = z.squaredNorm() / (epsilon_ * epsilon_);
    if (q >= 1.0) return 0.0;
    const double b = 1.0 - q;
    // integral of (1 - |z|^2)^4 over the unit disk is pi / 5
    return 5.0 / (std::numbers::pi * epsilon_ * epsilon_) * b * b * b * b;
}

double mollified_distance(const StarDomain& domain, const Mollifier& moll, const Point& x) {
    const auto offsets = moll.offsets();
    const auto weights = moll.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) sum += weights[i] * domain.oriented_distance(x + offsets[i]);
    return sum;
}

double regularized_distance(const StarDomain& domain, const Mollifier& moll, const Point& x) {
    const double eps = moll.epsilon();
    return mollified_distance(domain, moll, x) + eps * eps * x.squaredNorm();
}

SmoothApproximation build_smooth_approximation(const StarDomain& domain, double epsilon, std::size_t n_rays) {
    const DomainMetrics& m = domain.metrics();
    if (!domain.is_convex()) throw Error(ErrorCode::InvalidDomain, "smooth approximation requires a convex domain");
    if (!std::isfinite(epsilon) || !(epsilon > 0.0) || !(epsilon < m.rho / 4.0))
        throw Error(ErrorCode::InvalidInput, "epsilon must satisfy 0 < epsilon < rho/4 (rho = " +
                                                 std::to_string(m.rho) + ")");
    if (n_rays < 8) throw Error(ErrorCode::InvalidInput, "n_rays must be at least 8");

    SmoothApproximation out{epsilon, domain, domain, Mollifier(epsilon)};
    out.large_epsilon_warning = 4.0 * epsilon * m.R_out * m.R_out >= 1.0;

    std::vector<double> angles(n_rays);
    std::vector<double> radii(n_rays);
    const double tol = 1e-10;
    for (std::size_t i = 0; i < n_rays; ++i) {
        const double theta = kTwoPi * static_cast<double>(i) / static_cast<double>(n_rays);
        const Point u(std::cos(theta), std::sin(theta));
        auto f = [&](double t) { return regularized_distance(domain, out.mollifier, t * u); };

        double lo = 0.5 * m.rho;
        double hi = m.R_out + epsilon;
        double flo = f(lo);
        double fhi = f(hi);
        if (!(flo < 0.0 && fhi > 0.0))
            throw Error(ErrorCode::RootNotBracketed,
                        "zero level of the regularized distance not bracketed at angle " + std::to_string(theta));
        while (hi - lo > 1e-4 * m.R_out) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm < 0.0) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
                fhi = fm;
            }
        }
        // Illinois-modified secant keeps the bracket.
        int side = 0;
        double root = 0.5 * (lo + hi);
        for (int iter = 0; iter < 100 && hi - lo > tol; ++iter) {
            root = (lo * fhi - hi * flo) / (fhi - flo);
            const double fr = f(root);
            if (fr == 0.0) {
                lo = hi = root;
                break;
            }
            if (fr < 0.0) {
                lo = root;
                flo = fr;
                if (side == -1) fhi *= 0.5;
                side = -1;
            } else {
                hi = root;
                fhi = fr;
                if (side == 1) flo *= 0.5;
                side = 1;
            }
            if (std::abs(fr) < 1e-15 * m.R_out) break;
        }
        angles[i] = theta;
        radii[i] = root;
        out.sup_radius_error = std::max(out.sup_radius_error, std::abs(domain.radius(u) - root));
    }
    out.boundary = StarDomain::radial(std::move(angles), std::move(radii));
    return out;
}

std::vector<PhiFamilyMember> build_phi_family(const StarDomain& domain, std::span<const double> eps_list,
                                              std::size_t n_rays) {
    const DomainMetrics& m = domain.metrics();
    std::vector<PhiFamilyMember> family;
    family.reserve(eps_list.size());
    for (double eps : eps_list) {
        SmoothApproximation approx = build_smooth_approximation(domain, eps, n_rays);
        double mu = select_transfer_mu(domain, approx.boundary);
        if (!(mu > 0.0)) mu = 1e-12 * m.R_out;
        RadialMap transfer = RadialMap::transfer(domain, approx.boundary, mu);
        const double R = m.R_out;
        const double rho = m.rho;
        PhiFamilyMember member{std::move(approx), std::move(transfer),
                               R / (2.0 * rho) + (R + eps) * (R + eps) / ((rho - eps) * rho),
                               R * R / ((rho - 2.0 * eps) * rho), 2.0 * mu * rho / R};
        family.push_back(std::move(member));
    }
    return family;
}

PhiLipschitzCheck check_phi_lipschitz(const PhiFamilyMember& member, std::size_t pairs, std::uint64_t seed) {
    const RadialMap& map = member.transfer;
    PairSampler forward_sampler(map.source(), seed, true);
    PairSampler inverse_sampler(map.target(), seed + 1, true);
    PhiLipschitzCheck check;
    check.forward = sample_lipschitz(VectorFunction([&](const Point& x) { return map(x); }), forward_sampler, pairs,
                                     member.forward_bound);
    check.inverse = sample_lipschitz(VectorFunction([&](const Point& y) { return map.inverse(y); }), inverse_sampler,
                                     pairs, member.inverse_bound);
    return check;
}

} // namespace stardomain
