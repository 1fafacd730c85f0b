#include "stardomain/mesh.hpp"

#include "stardomain/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <string>

namespace stardomain {

namespace {

double cross(const Point& a, const Point& b) { return a.x() * b.y() - a.y() * b.x(); }

} // namespace

TriangleMesh::TriangleMesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
    const std::size_t nv = vertices_.size();
    std::map<std::array<std::size_t, 2>, std::size_t> edge_ids;
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (std::size_t v : tri)
            if (v >= nv) throw Error(ErrorCode::InvalidInput, "triangle " + std::to_string(t) + " has a bad vertex index");
        if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
            throw Error(ErrorCode::InvalidInput, "triangle " + std::to_string(t) + " repeats a vertex");
        if (!(signed_area(t) > 0.0))
            throw InvertedElementError(t, "triangle " + std::to_string(t) + " has non-positive signed area");
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = tri[k];
            const std::size_t b = tri[(k + 1) % 3];
            edge_ids.emplace(std::array<std::size_t, 2>{std::min(a, b), std::max(a, b)}, 0);
        }
    }
    edges_.reserve(edge_ids.size());
    for (auto& [key, id] : edge_ids) {
        id = edges_.size();
        edges_.push_back(key);
    }
    edge_valence_.assign(edges_.size(), 0);
    triangle_edges_.resize(triangles_.size());
    for (std::size_t t = 0; t < triangles_.size(); ++t) {
        const auto& tri = triangles_[t];
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = tri[k];
            const std::size_t b = tri[(k + 1) % 3];
            const std::size_t id = edge_ids.at({std::min(a, b), std::max(a, b)});
            triangle_edges_[t][k] = SignedEdge{id, a < b ? 1 : -1};
            if (++edge_valence_[id] > 2)
                throw Error(ErrorCode::InvalidInput, "edge shared by more than two triangles");
        }
    }
}

long TriangleMesh::euler_characteristic() const noexcept {
    return static_cast<long>(vertices_.size()) - static_cast<long>(edges_.size()) +
           static_cast<long>(triangles_.size());
}

double TriangleMesh::signed_area(std::size_t triangle) const {
    const auto& t = triangles_.at(triangle);
    return 0.5 * cross(vertices_[t[1]] - vertices_[t[0]], vertices_[t[2]] - vertices_[t[0]]);
}

double TriangleMesh::area() const {
    double a = 0.0;
    for (std::size_t t = 0; t < triangles_.size(); ++t) a += signed_area(t);
    return a;
}

TriangleMesh disk_reference_mesh(std::size_t rings) {
    if (rings < 1) throw Error(ErrorCode::InvalidInput, "rings must be at least 1");
    std::vector<Point> vertices{Point::Zero()};
    vertices.reserve(1 + 3 * rings * (rings + 1));
    auto ring_start = [](std::size_t k) { return k == 0 ? std::size_t{0} : 1 + 3 * k * (k - 1); };
    for (std::size_t k = 1; k <= rings; ++k) {
        const double radius = static_cast<double>(k) / static_cast<double>(rings);
        const std::size_t n = 6 * k;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            vertices.emplace_back(radius * std::cos(t), radius * std::sin(t));
        }
    }

    std::vector<std::array<std::size_t, 3>> triangles;
    triangles.reserve(6 * rings * rings);
    auto push = [&](std::size_t a, std::size_t b, std::size_t c) {
        const double area = cross(vertices[b] - vertices[a], vertices[c] - vertices[a]);
        if (area > 0.0)
            triangles.push_back({a, b, c});
        else
            triangles.push_back({a, c, b});
    };

    for (std::size_t j = 0; j < 6; ++j) push(0, 1 + j, 1 + (j + 1) % 6);

    for (std::size_t k = 2; k <= rings; ++k) {
        const std::size_t n_in = 6 * (k - 1);
        const std::size_t n_out = 6 * k;
        const std::size_t in0 = ring_start(k - 1);
        const std::size_t out0 = ring_start(k);
        std::size_t i = 0;
        std::size_t j = 0;
        while (i < n_in || j < n_out) {
            // advance the inner ring only when its next vertex comes strictly
            // first in angle, so aligned spokes become mesh edges
            const bool advance_inner = j == n_out || (i < n_in && (i + 1) * n_out < (j + 1) * n_in);
            if (advance_inner) {
                push(in0 + i % n_in, out0 + j % n_out, in0 + (i + 1) % n_in);
                ++i;
            } else {
                push(in0 + i % n_in, out0 + j % n_out, out0 + (j + 1) % n_out);
                ++j;
            }
        }
    }
    return TriangleMesh(std::move(vertices), std::move(triangles));
}

TriangleMesh map_mesh(const TriangleMesh& mesh, const RadialMap& map) {
    std::vector<Point> image;
    image.reserve(mesh.num_vertices());
    for (const Point& v : mesh.vertices()) image.push_back(map(v));
    return TriangleMesh(std::move(image), mesh.triangles());
}

TriangleMesh domain_mesh(const StarDomain& domain, std::size_t rings) {
    return map_mesh(disk_reference_mesh(rings), RadialMap::expansion(domain));
}

MeshQuality mesh_quality(const TriangleMesh& mesh) {
    MeshQuality q;
    q.min_angle = 180.0;
    q.h_min = std::numeric_limits<double>::infinity();
    const auto& v = mesh.vertices();
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles()[t];
        double longest = 0.0;
        double perimeter = 0.0;
        for (int k = 0; k < 3; ++k) {
            const Point& p = v[tri[k]];
            const Point a = v[tri[(k + 1) % 3]] - p;
            const Point b = v[tri[(k + 2) % 3]] - p;
            const double angle = std::atan2(std::abs(cross(a, b)), a.dot(b)) * 180.0 / std::numbers::pi;
            q.min_angle = std::min(q.min_angle, angle);
            const double len = a.norm();
            longest = std::max(longest, len);
            perimeter += len;
            q.h_max = std::max(q.h_max, len);
            q.h_min = std::min(q.h_min, len);
        }
        // longest edge over the inradius, normalized to 1 for equilateral
        const double inradius = 2.0 * mesh.signed_area(t) / perimeter;
        q.max_aspect = std::max(q.max_aspect, longest / (2.0 * std::sqrt(3.0) * inradius));
    }
    if (mesh.num_triangles() == 0) q.h_min = 0.0;
    return q;
}

IncidenceMatrices incidence_matrices(const TriangleMesh& mesh) {
    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> t0;
    t0.reserve(2 * mesh.num_edges());
    for (std::size_t e = 0; e < mesh.num_edges(); ++e) {
        const auto& edge = mesh.edges()[e];
        t0.emplace_back(static_cast<int>(e), static_cast<int>(edge[0]), -1.0);
        t0.emplace_back(static_cast<int>(e), static_cast<int>(edge[1]), 1.0);
    }
    std::vector<Triplet> t1;
    t1.reserve(3 * mesh.num_triangles());
    for (std::size_t f = 0; f < mesh.num_triangles(); ++f)
        for (const SignedEdge& se : mesh.triangle_edges()[f])
            t1.emplace_back(static_cast<int>(f), static_cast<int>(se.index), static_cast<double>(se.sign));

    IncidenceMatrices out;
    out.d0.resize(static_cast<Eigen::Index>(mesh.num_edges()), static_cast<Eigen::Index>(mesh.num_vertices()));
    out.d0.setFromTriplets(t0.begin(), t0.end());
    out.d1.resize(static_cast<Eigen::Index>(mesh.num_triangles()), static_cast<Eigen::Index>(mesh.num_edges()));
    out.d1.setFromTriplets(t1.begin(), t1.end());
    return out;
}

} // namespace stardomain
