#include "stardomain/bessel.hpp"

#include "stardomain/error.hpp"

#include <cmath>

namespace stardomain {

namespace {

// sum_m (-1)^m (x/2)^(2m+nu) / (m! (m+nu)!) for nu in {0, 1}
double series(double x, int nu) {
    const double q = -0.25 * x * x;
    double term = nu == 0 ? 1.0 : 0.5 * x;
    double sum = term;
    for (int m = 1; m < 200; ++m) {
        term *= q / (static_cast<double>(m) * static_cast<double>(m + nu));
        sum += term;
        if (std::abs(term) < 1e-20) break;
    }
    return sum;
}

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    if (flo * f(hi) > 0.0) throw Error(ErrorCode::RootNotBracketed, "Bessel root not bracketed");
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

double bessel_j0(double x) { return series(x, 0); }

double bessel_j1(double x) { return series(x, 1); }

double bessel_j1_prime(double x) {
    if (x == 0.0) return 0.5;
    return bessel_j0(x) - bessel_j1(x) / x;
}

double bessel_j0_first_root() {
    static const double root = bisect(bessel_j0, 2.0, 3.0);
    return root;
}

double bessel_j1_prime_first_root() {
    static const double root = bisect(bessel_j1_prime, 1.5, 2.2);
    return root;
}

BallConstants ball_pf_constants(double radius) {
    return {radius / bessel_j1_prime_first_root(), radius / bessel_j0_first_root()};
}

} // namespace stardomain
