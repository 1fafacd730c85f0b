#pragma once

#include "stardomain/mesh.hpp"

#include <iosfwd>

namespace stardomain {

/**
 * Lowest-order discrete L2 de Rham complex on a triangle mesh:
 *
 *   P1 hats --d0--> Whitney edges --d1--> piecewise constants
 *
 * Degrees of freedom are vertex values, edge line integrals (low -> high) and
 * face integrals, so d0/d1 are the signed incidence matrices. In those
 * coordinates the face mass is diag(1 / area).
 */
struct DeRhamComplex2D {
    SparseMatrix m0; ///< V x V
    SparseMatrix m1; ///< E x E
    SparseMatrix m2; ///< F x F
    SparseMatrix d0; ///< E x V
    SparseMatrix d1; ///< F x E
    double h_max = 0.0;
    double area = 0.0;

    Eigen::Index num_vertices() const { return m0.rows(); }
    Eigen::Index num_edges() const { return m1.rows(); }
    Eigen::Index num_faces() const { return m2.rows(); }
};

DeRhamComplex2D assemble_complex(const TriangleMesh& mesh);

/// D_k^T M_{k+1} D_k for k in {0, 1}.
SparseMatrix stiffness(const DeRhamComplex2D& complex, int k);

/// Local Whitney edge mass for a counterclockwise triangle; local edge k
/// joins vertices k and k+1 and is oriented that way.
Eigen::Matrix3d whitney_local_mass(const Point& p0, const Point& p1, const Point& p2);

/// Coordinate text export: one "row col value" line per stored entry,
/// 17 significant digits, zero-based indices.
void write_coordinate(std::ostream& out, const SparseMatrix& matrix);

} // namespace stardomain
