#pragma once

#include "stardomain/mesh.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace stardomain {

struct EigenResult {
    std::vector<double> eigenvalues; ///< ascending
    std::size_t zero_count = 0;      ///< eigenvalues with |mu| < drop_tol * mu_max
    double drop_tol = 0.0;
};

/// Smallest `how_many` eigenvalues of A u = mu M u by dense reduction:
/// Cholesky of M, symmetric transform, full symmetric eigensolve.
/// zero_count is taken over the full spectrum.
EigenResult generalized_eigs(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M, std::size_t how_many,
                             double drop_tol = 1e-8);
EigenResult generalized_eigs(const SparseMatrix& A, const SparseMatrix& M, std::size_t how_many,
                             double drop_tol = 1e-8);

/// A spanning set of the null space of a pencil's stiffness, with its rank.
/// With `pin_first`, the Gram matrix Z^T M Z is singular along e_0 only and
/// coordinate 0 is pinned when projecting.
struct KernelBasis {
    SparseMatrix vectors;
    std::size_t dimension = 0;
    bool pin_first = false;
};

enum class EigenMethod { Auto, Dense, Iterative };

struct PencilOptions {
    EigenMethod method = EigenMethod::Auto;
    /// Auto switches to the iterative path above this many unknowns.
    std::size_t dense_limit = 3500;
    double drop_tol = 1e-8;
    /// Required ratio between the smallest kept and largest dropped eigenvalue.
    double min_gap = 1e3;
    double iterative_tol = 1e-11;
    std::size_t max_iterations = 1000;
};

struct PencilSpectrum {
    std::vector<double> nonzero; ///< smallest nonzero eigenvalues, ascending
    std::size_t zero_count = 0;
    /// kept_min / max |dropped| on the dense path, infinity when nothing was
    /// dropped; on the iterative path the kernel is removed analytically and
    /// this holds 1 / (relative residual of A Z).
    double gap_ratio = 0.0;
    bool dense = true;
    std::size_t iterations = 0;
};

/**
 * Smallest `count` nonzero eigenvalues of the pencil (A, M) where A is
 * positive semidefinite with null space spanned by `kernel`.
 *
 * Dense path: full spectrum, drop |mu| < drop_tol * mu_max, require the
 * dropped count to equal kernel.dimension and a min_gap spectral gap.
 * Iterative path: shift-invert block subspace iteration on the
 * M-orthogonal complement of the kernel with Rayleigh-Ritz extraction.
 * Throws KernelSeparationFailure when the kernel cannot be separated.
 */
PencilSpectrum nonzero_pencil_spectrum(const SparseMatrix& A, const SparseMatrix& M, const KernelBasis& kernel,
                                       std::size_t count, const PencilOptions& options = {});

} // namespace stardomain
