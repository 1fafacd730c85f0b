#pragma once

#include "stardomain/derham.hpp"
#include "stardomain/eigen_solvers.hpp"
#include "stardomain/geometry.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace stardomain {

/// Null space of the pencil (stiffness(k), M_k): constants for k = 0, the
/// columns of d0 (with the first one pinned) for k = 1.
KernelBasis pencil_kernel(const DeRhamComplex2D& complex, int k);

/// (smallest nonzero eigenvalue of (D_k^T M_{k+1} D_k, M_k))^(-1/2).
double pf_constant(const DeRhamComplex2D& complex, int k, const PencilOptions& options = {});

/// Smallest `how_many` nonzero eigenvalues of the Hodge Laplacian on k-forms,
/// merged from the adjacent pencils.
std::vector<double> hodge_spectrum(const DeRhamComplex2D& complex, int k, std::size_t how_many,
                                   const PencilOptions& options = {});

/// Merge two ascending lists and keep the first `how_many` entries.
std::vector<double> merge_spectra(std::span<const double> a, std::span<const double> b, std::size_t how_many);

struct BoundCheck {
    std::string name;
    double lower = 0.0;
    double value = 0.0;
    double upper = 0.0;
    bool pass = false;
};

struct SpectrumReport {
    std::array<double, 2> pf{};
    std::array<std::vector<double>, 3> hodge;
    std::array<std::vector<double>, 2> pencil; ///< nonzero pencil eigenvalues
    std::array<std::size_t, 2> zero_count{};
    DomainMetrics metrics;
    std::vector<BoundCheck> bounds;
    bool ordering_pass = false;
    /// relative margins of diam/pi >= C_0 and C_0 >= C_1
    std::array<double, 2> ordering_margin{};
    double h_max = 0.0;
    double tolerance = 0.0; ///< 10 h_max / diam
    std::size_t rings = 0;
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::size_t faces = 0;
};

/// Mesh `domain` at `rings`, solve both pencils and fill in bounds and the
/// ordering verdict.
SpectrumReport spectrum_report(const StarDomain& domain, std::size_t rings, std::size_t how_many = 5,
                               const PencilOptions& options = {});

/// diam/pi >= C_0 >= C_1 with relative slack report.tolerance; stores the
/// margins into the report.
bool verify_ordering(SpectrumReport& report);

/// Neumann and Dirichlet comparisons against the unit disk constants, with
/// relative slack report.tolerance.
std::vector<BoundCheck> explicit_bounds_check(const DomainMetrics& metrics, const SpectrumReport& report);

/// sqrt(n) e^{3/2} / sqrt(k (n - k)) * diam, meaningful for 0 < k < n - 1.
double guerini_bound(int n, int k, double diameter);

struct SavoBounds {
    double lower = 0.0;
    double upper = 0.0;
};
/// ((k+1)(n+2) gamma^n)^{-1/2} sigma and gamma sqrt(binom(n, k)) sigma, where
/// sigma is the (k+1)-th singular value of the inner ellipsoid matrix.
SavoBounds savo_bounds(int n, int k, double gamma, double sigma_k_plus_1);

struct ConvergenceEntry {
    double epsilon = 0.0;
    SpectrumReport report;
    std::array<double, 2> delta{};                ///< |C_k,eps - C_k|
    std::array<std::vector<double>, 3> hodge_delta; ///< |lambda_eps - lambda| per k
    double sup_radius_error = 0.0;
};

struct ConvergenceStudy {
    std::vector<double> eps_list;
    std::size_t rings = 0;
    SpectrumReport reference;
    std::vector<ConvergenceEntry> entries;
    std::array<bool, 2> pf_monotone{};    ///< deltas non-increasing along eps_list
    std::array<bool, 3> hodge_monotone{}; ///< within hodge_slack
    std::array<bool, 2> final_gap_pass{}; ///< last delta below 5% relative
    double hodge_slack = 0.2;
    std::size_t hodge_count = 3;
    bool pass = false;
};

/// Compare the domain with its smooth approximations at every epsilon
/// (descending), all meshed with the same number of rings.
ConvergenceStudy convergence_study(const StarDomain& domain, std::span<const double> eps_list, std::size_t rings,
                                   std::size_t hodge_count = 3, const PencilOptions& options = {});

} // namespace stardomain
