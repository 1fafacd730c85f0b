#include "stardomain/derham.hpp"

#include "stardomain/error.hpp"

#include <iomanip>
#include <string>
#include <ostream>

namespace stardomain {

namespace {

using Triplet = Eigen::Triplet<double>;

// Gradients of the barycentric coordinates of a counterclockwise triangle.
std::array<Point, 3> barycentric_gradients(const Point& p0, const Point& p1, const Point& p2, double area) {
    const std::array<Point, 3> p{p0, p1, p2};
    std::array<Point, 3> g;
    for (int i = 0; i < 3; ++i) {
        const Point e = p[(i + 2) % 3] - p[(i + 1) % 3];
        g[i] = Point(-e.y(), e.x()) / (2.0 * area);
    }
    return g;
}

// summation order of duplicate triplets leaves 1-ulp asymmetries
SparseMatrix symmetrized(const SparseMatrix& a) {
    const SparseMatrix t = a.transpose();
    return SparseMatrix(0.5 * (a + t));
}

} // namespace

Eigen::Matrix3d whitney_local_mass(const Point& p0, const Point& p1, const Point& p2) {
    const double area = 0.5 * ((p1 - p0).x() * (p2 - p0).y() - (p1 - p0).y() * (p2 - p0).x());
    const auto grad = barycentric_gradients(p0, p1, p2, area);
    auto m = [area](int a, int b) { return area * (a == b ? 2.0 : 1.0) / 12.0; };
    auto g = [&grad](int a, int b) { return grad[a].dot(grad[b]); };

    Eigen::Matrix3d local;
    for (int k = 0; k < 3; ++k) {
        const int i = k;
        const int j = (k + 1) % 3;
        for (int l = 0; l < 3; ++l) {
            const int p = l;
            const int q = (l + 1) % 3;
            // integral of (l_i grad l_j - l_j grad l_i) . (l_p grad l_q - l_q grad l_p)
            local(k, l) = m(i, p) * g(j, q) - m(i, q) * g(j, p) - m(j, p) * g(i, q) + m(j, q) * g(i, p);
        }
    }
    return local;
}

DeRhamComplex2D assemble_complex(const TriangleMesh& mesh) {
    const auto& v = mesh.vertices();
    const std::size_t nf = mesh.num_triangles();

    std::vector<Triplet> t0;
    std::vector<Triplet> t1;
    std::vector<Triplet> t2;
    t0.reserve(9 * nf);
    t1.reserve(9 * nf);
    t2.reserve(nf);

    DeRhamComplex2D complex;
    for (std::size_t f = 0; f < nf; ++f) {
        const auto& tri = mesh.triangles()[f];
        const double area = mesh.signed_area(f);
        if (!(area > 0.0)) throw InvertedElementError(f, "triangle " + std::to_string(f) + " is inverted");
        complex.area += area;

        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                t0.emplace_back(static_cast<int>(tri[a]), static_cast<int>(tri[b]), area * (a == b ? 2.0 : 1.0) / 12.0);

        const Eigen::Matrix3d local = whitney_local_mass(v[tri[0]], v[tri[1]], v[tri[2]]);
        const auto& edges = mesh.triangle_edges()[f];
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                t1.emplace_back(static_cast<int>(edges[a].index), static_cast<int>(edges[b].index),
                                edges[a].sign * edges[b].sign * local(a, b));

        t2.emplace_back(static_cast<int>(f), static_cast<int>(f), 1.0 / area);
    }

    const auto nv = static_cast<Eigen::Index>(mesh.num_vertices());
    const auto ne = static_cast<Eigen::Index>(mesh.num_edges());
    const auto nfi = static_cast<Eigen::Index>(nf);
    complex.m0.resize(nv, nv);
    complex.m0.setFromTriplets(t0.begin(), t0.end());
    complex.m0 = symmetrized(complex.m0);
    complex.m1.resize(ne, ne);
    complex.m1.setFromTriplets(t1.begin(), t1.end());
    complex.m1 = symmetrized(complex.m1);
    complex.m2.resize(nfi, nfi);
    complex.m2.setFromTriplets(t2.begin(), t2.end());

    IncidenceMatrices inc = incidence_matrices(mesh);
    complex.d0 = std::move(inc.d0);
    complex.d1 = std::move(inc.d1);
    complex.h_max = mesh_quality(mesh).h_max;
    return complex;
}

SparseMatrix stiffness(const DeRhamComplex2D& complex, int k) {
    switch (k) {
    case 0: return symmetrized(SparseMatrix(complex.d0.transpose() * complex.m1 * complex.d0));
    case 1: return symmetrized(SparseMatrix(complex.d1.transpose() * complex.m2 * complex.d1));
    default: throw Error(ErrorCode::InvalidInput, "stiffness is defined for k = 0 and k = 1");
    }
}

void write_coordinate(std::ostream& out, const SparseMatrix& matrix) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(17);
    for (Eigen::Index col = 0; col < matrix.outerSize(); ++col)
        for (SparseMatrix::InnerIterator it(matrix, col); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    out.flags(flags);
    out.precision(precision);
}

} // namespace stardomain
