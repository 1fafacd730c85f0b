#pragma once

namespace stardomain {

/// Bessel functions of the first kind by power series. The alternating sum
/// cancels: absolute error is a few ulp of I0(x), so about 1e-15 near the
/// first roots and 1e-12 at x = 12.
double bessel_j0(double x);
double bessel_j1(double x);
double bessel_j1_prime(double x);

/// First positive root of J0 (about 2.4048).
double bessel_j0_first_root();
/// First positive root of J1' (about 1.8412).
double bessel_j1_prime_first_root();

/// PF constants of the disk of the given radius: C_0 = radius / j'_{1,1}
/// (first nonzero Neumann eigenvalue) and C_1 = radius / j_{0,1} (first
/// Dirichlet eigenvalue).
struct BallConstants {
    double neumann = 0.0;
    double dirichlet = 0.0;
};
BallConstants ball_pf_constants(double radius = 1.0);

} // namespace stardomain
