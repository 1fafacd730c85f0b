#pragma once

// Independent reference implementations used only by the tests.

#include <stardomain/geometry.hpp>
#include <stardomain/random.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace oracle {

using stardomain::Point;

inline double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

// Closed convex polygon membership by edge half-planes.
inline bool in_convex_polygon(std::span<const Point> v, const Point& x, double tol = 0.0) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        if (cross(b - a, x - a) < -tol * (b - a).norm()) return false;
    }
    return true;
}

// Gauge by bisection on s in {x in s * Omega}.
inline double gauge_by_bisection(std::span<const Point> v, const Point& x) {
    if (x.norm() == 0.0) return 0.0;
    double lo = 0.0;
    double hi = 1.0;
    while (!in_convex_polygon(v, x / hi)) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (in_convex_polygon(v, x / mid) ? hi : lo) = mid;
    }
    return hi;
}

inline double segment_distance(const Point& a, const Point& b, const Point& x) {
    const Point e = b - a;
    const double t = std::clamp((x - a).dot(e) / e.squaredNorm(), 0.0, 1.0);
    return (a + t * e - x).norm();
}

// Signed distance, negative on the closure.
inline double polygon_oriented_distance(std::span<const Point> v, const Point& x) {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) d = std::min(d, segment_distance(v[i], v[(i + 1) % v.size()], x));
    return in_convex_polygon(v, x) ? -d : d;
}

// Midpoint rule for the convolution of the normalized (1 - |z/eps|^2)^4 bump
// with f on an n x n grid over the support box.
template <class F>
double grid_convolution(F f, const Point& x, double eps, int n) {
    double num = 0.0;
    double den = 0.0;
    const double h = 2.0 * eps / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Point z(-eps + (i + 0.5) * h, -eps + (j + 0.5) * h);
            const double q = z.squaredNorm() / (eps * eps);
            if (q >= 1.0) continue;
            const double w = std::pow(1.0 - q, 4);
            num += w * f(x + z);
            den += w;
        }
    return num / den;
}

// Smallest `count` eigenvalues of A u = mu M u (A SPD) by inverse iteration
// with M-orthogonal deflation against the previously found vectors.
inline std::vector<double> inverse_iteration_eigs(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M, int count,
                                                  std::uint64_t seed = 7) {
    const Eigen::Index n = A.rows();
    Eigen::LDLT<Eigen::MatrixXd> solver(A);
    stardomain::CounterRng rng(seed);
    std::vector<Eigen::VectorXd> found;
    std::vector<double> values;
    for (int k = 0; k < count; ++k) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
        double lambda = 0.0;
        for (int it = 0; it < 20000; ++it) {
            for (const auto& u : found) v -= u.dot(M * v) * u;
            v /= std::sqrt(v.dot(M * v));
            Eigen::VectorXd w = solver.solve(M * v);
            for (const auto& u : found) w -= u.dot(M * w) * u;
            w /= std::sqrt(w.dot(M * w));
            const double next = w.dot(A * w);
            v = w;
            if (std::abs(next - lambda) < 1e-15 * std::abs(next)) {
                lambda = next;
                break;
            }
            lambda = next;
        }
        found.push_back(v);
        values.push_back(lambda);
    }
    std::sort(values.begin(), values.end());
    return values;
}

// P1 stiffness of a triangle from the cotangent formula.
inline Eigen::Matrix3d cotangent_stiffness(const Point& p0, const Point& p1, const Point& p2) {
    const Point p[3] = {p0, p1, p2};
    Eigen::Matrix3d K = Eigen::Matrix3d::Zero();
    for (int k = 0; k < 3; ++k) {
        const int i = (k + 1) % 3;
        const int j = (k + 2) % 3;
        const Point a = p[i] - p[k];
        const Point b = p[j] - p[k];
        const double cot = a.dot(b) / std::abs(cross(a, b));
        K(i, j) -= 0.5 * cot;
        K(j, i) -= 0.5 * cot;
        K(i, i) += 0.5 * cot;
        K(j, j) += 0.5 * cot;
    }
    return K;
}

} // namespace oracle
