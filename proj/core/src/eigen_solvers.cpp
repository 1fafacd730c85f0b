#include "stardomain/eigen_solvers.hpp"

#include "stardomain/error.hpp"
#include "stardomain/random.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace stardomain {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd dense_spectrum(const MatrixXd& A, const MatrixXd& M) {
    if (A.rows() != A.cols() || M.rows() != M.cols() || A.rows() != M.rows())
        throw Error(ErrorCode::DimensionMismatch, "pencil matrices must be square and of equal size");
    Eigen::LLT<MatrixXd> llt(M);
    if (llt.info() != Eigen::Success) throw Error(ErrorCode::NotPositiveDefinite, "mass matrix is not positive definite");
    const auto L = llt.matrixL();
    MatrixXd C = L.solve(A);
    C = L.solve(C.transpose()).transpose();
    C = 0.5 * (C + C.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<MatrixXd> solver(C, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

EigenResult make_result(const VectorXd& spectrum, std::size_t how_many, double drop_tol) {
    EigenResult result;
    result.drop_tol = drop_tol;
    const double mu_max = spectrum.size() > 0 ? spectrum.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i)
        if (std::abs(spectrum[i]) < drop_tol * mu_max) ++result.zero_count;
    const auto n = std::min<std::size_t>(how_many, static_cast<std::size_t>(spectrum.size()));
    result.eigenvalues.assign(spectrum.data(), spectrum.data() + n);
    return result;
}

// M-orthogonal projection onto the complement of span(Z).
class KernelProjector {
public:
    KernelProjector(const KernelBasis& kernel, const SparseMatrix& M) : Z_(kernel.vectors), pin_(kernel.pin_first) {
        if (Z_.cols() == 0) return;
        MZ_ = M * Z_;
        SparseMatrix gram = SparseMatrix(Z_.transpose() * MZ_);
        if (pin_) gram = SparseMatrix(gram.bottomRightCorner(gram.rows() - 1, gram.cols() - 1));
        solver_.compute(gram);
        if (solver_.info() != Eigen::Success)
            throw Error(ErrorCode::KernelSeparationFailure, "kernel Gram matrix is singular");
    }

    void apply(MatrixXd& X) const {
        if (Z_.cols() == 0) return;
        MatrixXd rhs = MZ_.transpose() * X;
        MatrixXd w(Z_.cols(), X.cols());
        if (pin_) {
            w.row(0).setZero();
            w.bottomRows(Z_.cols() - 1) = solver_.solve(MatrixXd(rhs.bottomRows(Z_.cols() - 1)));
        } else {
            w = solver_.solve(rhs);
        }
        X -= Z_ * w;
    }

private:
    SparseMatrix Z_;
    SparseMatrix MZ_;
    bool pin_;
    Eigen::SimplicialLDLT<SparseMatrix> solver_;
};

// Modified Gram-Schmidt in the M inner product (two passes); columns that
// collapse are refilled from `rng` and re-projected.
void m_orthonormalize(MatrixXd& Y, const SparseMatrix& M, const KernelProjector& projector, CounterRng& rng) {
    const Eigen::Index p = Y.cols();
    MatrixXd MY(Y.rows(), p);
    for (Eigen::Index j = 0; j < p; ++j) {
        for (int attempt = 0; attempt < 4; ++attempt) {
            VectorXd v = Y.col(j);
            const double initial = std::sqrt(std::max(0.0, v.dot(M * v)));
            for (int pass = 0; pass < 2; ++pass)
                for (Eigen::Index i = 0; i < j; ++i) v -= MY.col(i).dot(v) * Y.col(i);
            VectorXd Mv = M * v;
            const double norm = std::sqrt(std::max(0.0, v.dot(Mv)));
            if (norm > 1e-8 * initial && norm > 0.0) {
                Y.col(j) = v / norm;
                MY.col(j) = Mv / norm;
                break;
            }
            MatrixXd fresh(Y.rows(), 1);
            for (Eigen::Index r = 0; r < Y.rows(); ++r) fresh(r, 0) = rng.uniform(-1.0, 1.0);
            projector.apply(fresh);
            Y.col(j) = fresh.col(0);
            if (attempt == 3) throw Error(ErrorCode::KernelSeparationFailure, "subspace collapsed during iteration");
        }
    }
}

PencilSpectrum dense_nonzero(const SparseMatrix& A, const SparseMatrix& M, const KernelBasis& kernel, std::size_t count,
                             const PencilOptions& options) {
    const VectorXd spectrum = dense_spectrum(MatrixXd(A), MatrixXd(M));
    const double mu_max = spectrum.cwiseAbs().maxCoeff();
    const double threshold = options.drop_tol * mu_max;

    PencilSpectrum out;
    out.dense = true;
    double dropped_max = 0.0;
    std::vector<double> kept;
    for (Eigen::Index i = 0; i < spectrum.size(); ++i) {
        if (std::abs(spectrum[i]) < threshold) {
            ++out.zero_count;
            dropped_max = std::max(dropped_max, std::abs(spectrum[i]));
        } else {
            kept.push_back(spectrum[i]);
        }
    }
    if (out.zero_count != kernel.dimension)
        throw Error(ErrorCode::KernelSeparationFailure, "dropped " + std::to_string(out.zero_count) +
                                                            " eigenvalues, expected kernel dimension " +
                                                            std::to_string(kernel.dimension));
    if (kept.empty()) throw Error(ErrorCode::KernelSeparationFailure, "pencil has no nonzero eigenvalues");
    out.gap_ratio = dropped_max > 0.0 ? kept.front() / dropped_max : std::numeric_limits<double>::infinity();
    if (out.gap_ratio < options.min_gap)
        throw Error(ErrorCode::KernelSeparationFailure,
                    "spectral gap " + std::to_string(out.gap_ratio) + " below required " + std::to_string(options.min_gap));
    std::sort(kept.begin(), kept.end());
    kept.resize(std::min(count, kept.size()));
    out.nonzero = std::move(kept);
    return out;
}

PencilSpectrum iterative_nonzero(const SparseMatrix& A, const SparseMatrix& M, const KernelBasis& kernel,
                                 std::size_t count, const PencilOptions& options) {
    const Eigen::Index n = A.rows();
    const auto free_dim = static_cast<Eigen::Index>(n) - static_cast<Eigen::Index>(kernel.dimension);
    if (free_dim <= 0) throw Error(ErrorCode::KernelSeparationFailure, "pencil has no nonzero eigenvalues");
    const Eigen::Index wanted = std::min<Eigen::Index>(static_cast<Eigen::Index>(count), free_dim);
    const Eigen::Index block = std::min<Eigen::Index>(free_dim, 2 * wanted + 8);

    PencilSpectrum out;
    out.dense = false;
    out.zero_count = kernel.dimension;

    // the kernel is removed analytically; check that it really is one
    if (kernel.vectors.cols() > 0) {
        const SparseMatrix AZ = A * kernel.vectors;
        double az = 0.0;
        for (Eigen::Index c = 0; c < AZ.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(AZ, c); it; ++it) az = std::max(az, std::abs(it.value()));
        double a_max = 0.0;
        for (Eigen::Index c = 0; c < A.outerSize(); ++c)
            for (SparseMatrix::InnerIterator it(A, c); it; ++it) a_max = std::max(a_max, std::abs(it.value()));
        const double residual = a_max > 0.0 ? az / a_max : 0.0;
        if (residual > 1e-10)
            throw Error(ErrorCode::KernelSeparationFailure, "kernel basis is not annihilated by the stiffness");
        out.gap_ratio = residual > 0.0 ? 1.0 / residual : std::numeric_limits<double>::infinity();
    } else {
        out.gap_ratio = std::numeric_limits<double>::infinity();
    }

    const double diag_ratio = A.diagonal().mean() / M.diagonal().mean();
    const double sigma = diag_ratio > 0.0 ? 1e-4 * diag_ratio : 1.0;
    const SparseMatrix shifted = A + sigma * M;
    Eigen::SimplicialLDLT<SparseMatrix> solver(shifted);
    if (solver.info() != Eigen::Success)
        throw Error(ErrorCode::NotPositiveDefinite, "shifted pencil could not be factorized");

    KernelProjector projector(kernel, M);
    CounterRng rng(0x5eed5eedULL, static_cast<std::uint64_t>(n));
    MatrixXd X(n, block);
    for (Eigen::Index j = 0; j < block; ++j)
        for (Eigen::Index i = 0; i < n; ++i) X(i, j) = rng.uniform(-1.0, 1.0);
    projector.apply(X);
    m_orthonormalize(X, M, projector, rng);

    VectorXd previous = VectorXd::Constant(block, std::numeric_limits<double>::infinity());
    VectorXd ritz;
    for (std::size_t it = 1; it <= options.max_iterations; ++it) {
        MatrixXd Y = solver.solve(M * X);
        projector.apply(Y);
        m_orthonormalize(Y, M, projector, rng);
        MatrixXd H = Y.transpose() * (A * Y);
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::SelfAdjointEigenSolver<MatrixXd> rr(H);
        ritz = rr.eigenvalues();
        X = Y * rr.eigenvectors();
        out.iterations = it;

        double change = 0.0;
        for (Eigen::Index j = 0; j < wanted; ++j)
            change = std::max(change, std::abs(ritz[j] - previous[j]) / std::abs(ritz[j]));
        previous = ritz;
        if (change < options.iterative_tol) break;
        if (it == options.max_iterations)
            throw Error(ErrorCode::KernelSeparationFailure, "subspace iteration did not converge");
    }
    out.nonzero.assign(ritz.data(), ritz.data() + wanted);
    return out;
}

} // namespace

EigenResult generalized_eigs(const Eigen::MatrixXd& A, const Eigen::MatrixXd& M, std::size_t how_many, double drop_tol) {
    return make_result(dense_spectrum(A, M), how_many, drop_tol);
}

EigenResult generalized_eigs(const SparseMatrix& A, const SparseMatrix& M, std::size_t how_many, double drop_tol) {
    if (A.rows() != M.rows() || A.cols() != M.cols())
        throw Error(ErrorCode::DimensionMismatch, "pencil matrices must be of equal size");
    return generalized_eigs(Eigen::MatrixXd(A), Eigen::MatrixXd(M), how_many, drop_tol);
}

PencilSpectrum nonzero_pencil_spectrum(const SparseMatrix& A, const SparseMatrix& M, const KernelBasis& kernel,
                                       std::size_t count, const PencilOptions& options) {
    if (A.rows() != A.cols() || M.rows() != M.cols() || A.rows() != M.rows())
        throw Error(ErrorCode::DimensionMismatch, "pencil matrices must be square and of equal size");
    if (kernel.vectors.cols() > 0 && kernel.vectors.rows() != A.rows())
        throw Error(ErrorCode::DimensionMismatch, "kernel basis has the wrong number of rows");
    const bool dense = options.method == EigenMethod::Dense ||
                       (options.method == EigenMethod::Auto && static_cast<std::size_t>(A.rows()) <= options.dense_limit);
    return dense ? dense_nonzero(A, M, kernel, count, options) : iterative_nonzero(A, M, kernel, count, options);
}

} // namespace stardomain
