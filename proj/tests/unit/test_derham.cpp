#include "oracles.hpp"

#include <stardomain/derham.hpp>
#include <stardomain/error.hpp>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace stardomain;

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

// Whitney form of the oriented edge (i, j): l_i grad l_j - l_j grad l_i.
Point whitney(const std::array<Point, 3>& p, int i, int j, const Point& x) {
    const double area = 0.5 * oracle::cross(p[1] - p[0], p[2] - p[0]);
    auto lambda = [&](int k) {
        const Point& a = p[(k + 1) % 3];
        const Point& b = p[(k + 2) % 3];
        return 0.5 * oracle::cross(b - a, x - a) / area;
    };
    auto grad = [&](int k) -> Point {
        const Point e = p[(k + 2) % 3] - p[(k + 1) % 3];
        return Point(-e.y(), e.x()) / (2.0 * area);
    };
    return lambda(i) * grad(j) - lambda(j) * grad(i);
}

} // namespace

TEST(Assembly, UnitRightTriangleMass) {
    const auto c = assemble_complex(TriangleMesh({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}));
    Eigen::Matrix3d expected;
    expected << 2, 1, 1, 1, 2, 1, 1, 1, 2;
    expected /= 24.0;
    EXPECT_LT(max_abs(Eigen::MatrixXd(c.m0) - expected), 1e-16);
    EXPECT_NEAR(c.area, 0.5, 1e-16);
}

TEST(Assembly, FaceMassOfHexagon) {
    const auto c = assemble_complex(disk_reference_mesh(1));
    ASSERT_EQ(c.num_faces(), 6);
    const double sector = std::sqrt(3.0) / 4.0;
    double total = 0.0;
    for (Eigen::Index f = 0; f < 6; ++f) {
        EXPECT_NEAR(1.0 / c.m2.coeff(f, f), sector, 1e-15);
        total += 1.0 / c.m2.coeff(f, f);
    }
    EXPECT_NEAR(total, 3.0 * std::sqrt(3.0) / 2.0, 1e-14);
}

TEST(Assembly, ConstantsIntegrateToArea) {
    for (const auto& d : {make_square(1.0), StarDomain::ball(1.0), make_random_convex_polygon(8, 3)}) {
        const auto mesh = domain_mesh(d, 10);
        const auto c = assemble_complex(mesh);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(c.num_vertices());
        EXPECT_NEAR(ones.dot(c.m0 * ones), mesh.area(), 1e-12);
        EXPECT_NEAR(c.area, mesh.area(), 1e-12);
    }
}

TEST(Assembly, WhitneyMassMatchesQuadrature) {
    // degree-2 integrand: the 7-point rule on the edge midpoints, vertices and
    // centroid (weights 3/60, 8/60, 27/60) is exact
    CounterRng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<Point, 3> p;
        for (auto& q : p) q = Point(rng.uniform(-1, 1), rng.uniform(-1, 1));
        if (oracle::cross(p[1] - p[0], p[2] - p[0]) < 0) std::swap(p[1], p[2]);
        const double area = 0.5 * oracle::cross(p[1] - p[0], p[2] - p[0]);
        if (area < 0.05) continue;
        std::vector<std::pair<Point, double>> rule;
        for (int k = 0; k < 3; ++k) {
            rule.emplace_back(p[k], 3.0 / 60.0);
            rule.emplace_back(0.5 * (p[k] + p[(k + 1) % 3]), 8.0 / 60.0);
        }
        rule.emplace_back((p[0] + p[1] + p[2]) / 3.0, 27.0 / 60.0);
        const Eigen::Matrix3d local = whitney_local_mass(p[0], p[1], p[2]);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double ref = 0.0;
                for (const auto& [x, w] : rule)
                    ref += w * area * whitney(p, a, (a + 1) % 3, x).dot(whitney(p, b, (b + 1) % 3, x));
                EXPECT_NEAR(local(a, b), ref, 1e-12 * std::max(1.0, std::abs(ref)));
            }
    }
}

TEST(Assembly, MassMatricesSymmetricPositiveDefinite) {
    const auto c = assemble_complex(domain_mesh(make_random_convex_polygon(7, 1), 6));
    for (const SparseMatrix* m : {&c.m0, &c.m1, &c.m2}) {
        const Eigen::MatrixXd d(*m);
        EXPECT_EQ(max_abs(d - d.transpose()), 0.0);
        Eigen::LLT<Eigen::MatrixXd> llt(d);
        EXPECT_EQ(llt.info(), Eigen::Success);
    }
}

TEST(Stiffness, CotangentFormulaOnSingleTriangle) {
    const std::array<Point, 3> p{Point(0.1, -0.2), Point(1.3, 0.1), Point(0.4, 0.9)};
    const auto c = assemble_complex(TriangleMesh({p[0], p[1], p[2]}, {{0, 1, 2}}));
    const Eigen::MatrixXd K(stiffness(c, 0));
    EXPECT_LT(max_abs(K - oracle::cotangent_stiffness(p[0], p[1], p[2])), 1e-14);
}

TEST(Stiffness, RowSumsAndLinearEnergy) {
    const auto mesh = domain_mesh(make_square(1.0), 8);
    const auto c = assemble_complex(mesh);
    const SparseMatrix K = stiffness(c, 0);
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(c.num_vertices());
    EXPECT_LT((K * ones).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::VectorXd fx(c.num_vertices());
    for (Eigen::Index i = 0; i < fx.size(); ++i) fx[i] = mesh.vertices()[i].x();
    EXPECT_NEAR(fx.dot(K * fx), mesh.area(), 1e-10);
}

TEST(Stiffness, GradientOfAffineFunctionIsEdgeIntegral) {
    const auto mesh = domain_mesh(make_random_convex_polygon(8, 2), 5);
    const auto c = assemble_complex(mesh);
    const Point g(0.7, -1.9);
    Eigen::VectorXd f(c.num_vertices());
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = g.dot(mesh.vertices()[i]) + 0.3;
    const Eigen::VectorXd edge = c.d0 * f;
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const auto& ed = mesh.edges()[e];
        EXPECT_NEAR(edge[e], g.dot(mesh.vertices()[ed[1]] - mesh.vertices()[ed[0]]), 1e-13);
    }
}

TEST(Stiffness, KernelDimensions) {
    const auto c = assemble_complex(disk_reference_mesh(2));
    for (int k = 0; k < 2; ++k) {
        const Eigen::MatrixXd A(stiffness(c, k));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
        const double scale = es.eigenvalues().cwiseAbs().maxCoeff();
        Eigen::Index zeros = 0;
        for (Eigen::Index i = 0; i < A.rows(); ++i) zeros += std::abs(es.eigenvalues()[i]) < 1e-10 * scale;
        EXPECT_EQ(zeros, k == 0 ? 1 : c.num_vertices() - 1);
        EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10 * scale);
    }
    const SparseMatrix D10 = c.d1 * c.d0;
    EXPECT_EQ(D10.norm(), 0.0);
    EXPECT_THROW(stiffness(c, 2), Error);
}

TEST(Export, CoordinateFormat) {
    SparseMatrix m(2, 3);
    m.insert(0, 1) = 1.0 / 3.0;
    m.insert(1, 2) = -2.0;
    m.makeCompressed();
    std::ostringstream out;
    write_coordinate(out, m);
    EXPECT_EQ(out.str(), "0 1 0.33333333333333331\n1 2 -2\n");
}
