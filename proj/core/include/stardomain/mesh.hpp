#pragma once

#include "stardomain/geometry.hpp"
#include "stardomain/transforms.hpp"

#include <Eigen/SparseCore>

#include <array>
#include <cstddef>
#include <vector>

namespace stardomain {

using SparseMatrix = Eigen::SparseMatrix<double>;

struct SignedEdge {
    std::size_t index = 0;
    int sign = 1; ///< +1 when the counterclockwise traversal agrees with low -> high
};

/**
 * Oriented triangle mesh with derived edge structure. Triangles are
 * counterclockwise; every edge is stored as (low, high) vertex indices and
 * edges are numbered in lexicographic order of that pair.
 */
class TriangleMesh {
public:
    TriangleMesh() = default;
    /// Throws InvertedElementError for non-positive signed area and
    /// InvalidInput for bad indices or edges shared by more than two triangles.
    TriangleMesh(std::vector<Point> vertices, std::vector<std::array<std::size_t, 3>> triangles);

    const std::vector<Point>& vertices() const noexcept { return vertices_; }
    const std::vector<std::array<std::size_t, 3>>& triangles() const noexcept { return triangles_; }
    const std::vector<std::array<std::size_t, 2>>& edges() const noexcept { return edges_; }
    /// Local edge k joins local vertices k and (k+1) % 3.
    const std::vector<std::array<SignedEdge, 3>>& triangle_edges() const noexcept { return triangle_edges_; }
    /// Number of triangles incident to each edge.
    const std::vector<int>& edge_valence() const noexcept { return edge_valence_; }

    std::size_t num_vertices() const noexcept { return vertices_.size(); }
    std::size_t num_edges() const noexcept { return edges_.size(); }
    std::size_t num_triangles() const noexcept { return triangles_.size(); }
    long euler_characteristic() const noexcept;

    double signed_area(std::size_t triangle) const;
    double area() const;

private:
    std::vector<Point> vertices_;
    std::vector<std::array<std::size_t, 3>> triangles_;
    std::vector<std::array<std::size_t, 2>> edges_;
    std::vector<std::array<SignedEdge, 3>> triangle_edges_;
    std::vector<int> edge_valence_;
};

struct MeshQuality {
    double min_angle = 0.0; ///< degrees
    double max_aspect = 0.0; ///< longest edge over shortest altitude, per triangle
    double h_max = 0.0;
    double h_min = 0.0;
};

/// Concentric-ring mesh of the unit disk: ring k sits at radius k/rings and
/// carries 6k equally spaced vertices.
TriangleMesh disk_reference_mesh(std::size_t rings);

/// Vertex-wise image under `map`; connectivity unchanged.
TriangleMesh map_mesh(const TriangleMesh& mesh, const RadialMap& map);

/// disk_reference_mesh pushed through the expansion map of `domain`.
TriangleMesh domain_mesh(const StarDomain& domain, std::size_t rings);

MeshQuality mesh_quality(const TriangleMesh& mesh);

struct IncidenceMatrices {
    SparseMatrix d0; ///< E x V
    SparseMatrix d1; ///< F x E
};

IncidenceMatrices incidence_matrices(const TriangleMesh& mesh);

} // namespace stardomain
