#pragma once

#include "stardomain/geometry.hpp"
#include "stardomain/transforms.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace stardomain {

/**
 * Compactly supported bump eta_eps(z) = c (1 - |z/eps|^2)^4 on the disk of
 * radius eps, discretized by a polar product rule: `quad_order` Gauss-Legendre
 * nodes in the radius times 2 * quad_order equally spaced angles. The radial
 * integrand is a polynomial of degree 9, so the rule integrates the bump
 * exactly; weights are normalized to unit discrete mass.
 */
class Mollifier {
public:
    explicit Mollifier(double epsilon, std::size_t quad_order = 8);

    double epsilon() const noexcept { return epsilon_; }
    std::size_t quad_order() const noexcept { return quad_order_; }
    std::span<const Point> offsets() const noexcept { return offsets_; }
    std::span<const double> weights() const noexcept { return weights_; }
    /// Sum of the weights before normalization (exact mass is 1).
    double raw_mass() const noexcept { return raw_mass_; }

    /// Normalized bump density at offset z.
    double density(const Point& z) const;

private:
    double epsilon_;
    std::size_t quad_order_;
    std::vector<Point> offsets_;
    std::vector<double> weights_;
    double raw_mass_ = 0.0;
};

/// Convolution of the oriented distance with the bump, d_eps(x).
double mollified_distance(const StarDomain& domain, const Mollifier& moll, const Point& x);

/// d'_eps(x) = d_eps(x) + eps^2 |x|^2.
double regularized_distance(const StarDomain& domain, const Mollifier& moll, const Point& x);

/// Zero sublevel set of the regularized mollified distance, extracted as a
/// radial spline over `n_rays` uniform angles.
struct SmoothApproximation {
    double epsilon = 0.0;
    StarDomain base;
    StarDomain boundary;
    Mollifier mollifier;
    /// Sup over the ray directions of |s_base - s_eps|.
    double sup_radius_error = 0.0;
    /// True when 4 eps R^2 >= 1 (outside the regime of the closeness argument).
    bool large_epsilon_warning = false;

    double regularized_eval(const Point& x) const { return regularized_distance(base, mollifier, x); }
};

/// Requires a convex domain and epsilon < rho/4. Each ray root is bracketed on
/// [rho/2, R_out + eps], bisected and secant-polished to 1e-10.
/// Throws RootNotBracketed when the zero crossing is missing.
SmoothApproximation build_smooth_approximation(const StarDomain& domain, double epsilon, std::size_t n_rays = 4096);

struct PhiFamilyMember {
    SmoothApproximation approximation;
    RadialMap transfer;
    /// R/(2 rho) + (R + eps)^2/((rho - eps) rho)
    double forward_bound = 0.0;
    /// R^2/((rho - 2 eps) rho)
    double inverse_bound = 0.0;
    /// Distance from the boundary beyond which the map is the identity,
    /// 2 mu rho / R.
    double identity_band = 0.0;
};

std::vector<PhiFamilyMember> build_phi_family(const StarDomain& domain, std::span<const double> eps_list,
                                              std::size_t n_rays = 4096);

/// Lipschitz reports of Phi_eps and its inverse against the eps-indexed bounds.
struct PhiLipschitzCheck {
    LipschitzReport forward;
    LipschitzReport inverse;
};

PhiLipschitzCheck check_phi_lipschitz(const PhiFamilyMember& member, std::size_t pairs, std::uint64_t seed);

} // namespace stardomain
