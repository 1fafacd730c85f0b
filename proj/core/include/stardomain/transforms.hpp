#pragma once

#include "stardomain/geometry.hpp"
#include "stardomain/random.hpp"

#include <array>
#include <cstdint>
#include <functional>

namespace stardomain {

enum class RadialMapKind { ExpansionS, GaugeG, Transfer, CompositeXi };

/**
 * Positively homogeneous (S, G, Xi) or blended (Transfer) map of the plane
 * that sends every ray from the origin into itself.
 *
 * - ExpansionS(domain): x -> radius(x/|x|) x, unit disk onto the domain.
 * - GaugeG(domain): x -> gauge(x) x/|x|, the inverse of ExpansionS.
 * - Transfer(source, target, mu): identity on S_source(B_T) with
 *   T = 1 - 2 mu / R_source, radial blend of S_source and S_target on the
 *   outer band, composed with G_source. Maps source onto target.
 * - CompositeXi(source, target): S_target o G_source.
 */
class RadialMap {
public:
    static RadialMap expansion(StarDomain domain);
    static RadialMap gauge(StarDomain domain);
    /// Throws InvalidInput unless 2 mu < R_source and the sampled sup of
    /// |s_source - s_target| over 4096 directions is below mu.
    static RadialMap transfer(StarDomain source, StarDomain target, double mu);
    static RadialMap composite(StarDomain source, StarDomain target);

    RadialMapKind kind() const noexcept { return kind_; }
    const StarDomain& source() const noexcept { return source_; }
    /// Target domain; for ExpansionS/GaugeG this is the domain itself.
    const StarDomain& target() const noexcept { return target_; }
    double mu() const noexcept { return mu_; }
    /// Radius in the reference disk below which Transfer is the identity.
    double blend_start() const noexcept { return blend_start_; }

    /// Throws OutOfDomain for Transfer inputs outside the source closure.
    Point operator()(const Point& x) const;
    /// Throws OutOfDomain for Transfer inputs outside the target closure.
    Point inverse(const Point& y) const;

private:
    RadialMap(RadialMapKind kind, StarDomain source, StarDomain target, double mu);

    // |Theta(tau u)| for a reference radius tau in [T, 1] along a ray where
    // the two domains have boundary radii r_source and r_target.
    double blend_radius(double tau, double r_source, double r_target) const;

    RadialMapKind kind_;
    StarDomain source_;
    StarDomain target_;
    double mu_ = 0.0;
    double blend_start_ = 1.0;
};

/// Supremum of |s_a(u) - s_b(u)| over `n_dirs` equally spaced unit directions.
double sup_radius_difference(const StarDomain& a, const StarDomain& b, std::size_t n_dirs = 4096);

/// 1.05 times the sampled sup radius difference over 4096 directions.
double select_transfer_mu(const StarDomain& source, const StarDomain& target);

struct LipschitzReport {
    double empirical = 0.0;         ///< sup of sampled |f(x)-f(y)| / |x-y|
    double empirical_lower = 0.0;   ///< inf of the same ratios
    double theoretical_bound = 0.0;
    std::size_t sample_pairs = 0;
    std::array<Point, 2> witness{Point::Zero(), Point::Zero()};
    bool pass = false;
};

/// Relative slack applied to theoretical bounds in pass/fail decisions.
inline constexpr double kLipschitzSlack = 1e-9;

/// Theoretical Lipschitz constant for `map` (or its inverse) from the domain
/// radii: R^2/rho for S, 1/r for G, R_t^2/(rho_t rho_s) for Xi and the
/// band-blend estimates for Transfer.
double theoretical_lipschitz_bound(const RadialMap& map, bool inverse = false);
double theoretical_lipschitz_bound(ScalarFieldKind field, const DomainMetrics& metrics);

using VectorFunction = std::function<Point(const Point&)>;
using ScalarFunction = std::function<double(const Point&)>;

/**
 * Multi-scale pair sampler. Pair i uses a base point uniform in `region`
 * (rejection from its bounding disk scaled by `radius_factor`); its partner is
 * an independent uniform point for i % 4 == 0 and a Gaussian offset of
 * standard deviation 1e-1, 1e-3, 1e-5 times R otherwise. With
 * `restrict_to_region`, partners leaving the region are redrawn.
 */
class PairSampler {
public:
    PairSampler(StarDomain region, std::uint64_t seed, bool restrict_to_region, double radius_factor = 1.0);
    std::array<Point, 2> next();

private:
    Point uniform_point();
    Point offset_partner(const Point& base, double scale);

    StarDomain region_;
    CounterRng rng_;
    std::uint64_t drawn_ = 0;
    bool restrict_;
    double radius_;
};

/// Sampled Lipschitz estimate of `map` (or its inverse) over `region`.
/// Deterministic in `seed`; theoretical bound from theoretical_lipschitz_bound.
LipschitzReport empirical_lipschitz(const RadialMap& map, const StarDomain& region, std::size_t pairs,
                                    std::uint64_t seed, bool inverse = false);

/// Lipschitz estimate of a scalar field, pairs drawn from the disk of radius
/// 1.5 R_out so both sides of the boundary are covered.
LipschitzReport scalar_lipschitz(ScalarFieldKind field, const StarDomain& domain, std::size_t pairs,
                                 std::uint64_t seed);

/// Generic sampler used by the two functions above.
LipschitzReport sample_lipschitz(const VectorFunction& f, PairSampler& sampler, std::size_t pairs, double bound);
LipschitzReport sample_lipschitz(const ScalarFunction& f, PairSampler& sampler, std::size_t pairs, double bound);

/// Boundary chord checks for pairs x, y on the boundary at angle alpha:
///   r (2/pi) alpha <= |x - y| <= (R^2/rho) alpha,
///   | |x| - |y| | <= (R/rho) sqrt(R^2 - rho^2) alpha.
struct ChordAngleReport {
    std::size_t pairs = 0;
    std::size_t lower_violations = 0;
    std::size_t upper_violations = 0;
    std::size_t magnitude_violations = 0;
    /// Minimum over pairs of (value - bound) resp. (bound - value); negative
    /// beyond round-off means a violation.
    double worst_lower_slack = 0.0;
    double worst_upper_slack = 0.0;
    double worst_magnitude_slack = 0.0;
    bool pass = false;
};

ChordAngleReport chord_angle_bounds_check(const StarDomain& domain, std::size_t pairs, std::uint64_t seed);

} // namespace stardomain
