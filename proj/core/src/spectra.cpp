#include "stardomain/spectra.hpp"

#include "stardomain/approximation.hpp"
#include "stardomain/bessel.hpp"
#include "stardomain/error.hpp"
#include "stardomain/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace stardomain {

namespace {

void check_degree(int k, int max_k) {
    if (k < 0 || k > max_k) throw Error(ErrorCode::InvalidInput, "form degree out of range: " + std::to_string(k));
}

PencilSpectrum solve_pencil(const DeRhamComplex2D& complex, int k, std::size_t count, const PencilOptions& options) {
    const SparseMatrix A = stiffness(complex, k);
    const SparseMatrix& M = k == 0 ? complex.m0 : complex.m1;
    return nonzero_pencil_spectrum(A, M, pencil_kernel(complex, k), count, options);
}

bool within(double lower, double value, double upper, double tol) {
    return lower * (1.0 - tol) <= value && value <= upper * (1.0 + tol);
}

} // namespace

KernelBasis pencil_kernel(const DeRhamComplex2D& complex, int k) {
    check_degree(k, 1);
    KernelBasis kernel;
    if (k == 0) {
        const Eigen::Index n = complex.num_vertices();
        kernel.vectors.resize(n, 1);
        std::vector<Eigen::Triplet<double>> ones;
        ones.reserve(static_cast<std::size_t>(n));
        for (Eigen::Index i = 0; i < n; ++i) ones.emplace_back(static_cast<int>(i), 0, 1.0);
        kernel.vectors.setFromTriplets(ones.begin(), ones.end());
        kernel.dimension = 1;
    } else {
        kernel.vectors = complex.d0;
        kernel.dimension = static_cast<std::size_t>(complex.num_vertices()) - 1;
        kernel.pin_first = true;
    }
    return kernel;
}

double pf_constant(const DeRhamComplex2D& complex, int k, const PencilOptions& options) {
    check_degree(k, 1);
    const PencilSpectrum s = solve_pencil(complex, k, 1, options);
    return 1.0 / std::sqrt(s.nonzero.front());
}

std::vector<double> merge_spectra(std::span<const double> a, std::span<const double> b, std::size_t how_many) {
    std::vector<double> out(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
    out.resize(std::min(how_many, out.size()));
    return out;
}

std::vector<double> hodge_spectrum(const DeRhamComplex2D& complex, int k, std::size_t how_many,
                                   const PencilOptions& options) {
    check_degree(k, 2);
    std::vector<double> lower;
    std::vector<double> upper;
    if (k >= 1) lower = solve_pencil(complex, k - 1, how_many, options).nonzero;
    if (k <= 1) upper = solve_pencil(complex, k, how_many, options).nonzero;
    return merge_spectra(lower, upper, how_many);
}

SpectrumReport spectrum_report(const StarDomain& domain, std::size_t rings, std::size_t how_many,
                               const PencilOptions& options) {
    if (how_many < 1) throw Error(ErrorCode::InvalidInput, "how_many must be at least 1");
    const TriangleMesh mesh = domain_mesh(domain, rings);
    const DeRhamComplex2D complex = assemble_complex(mesh);

    SpectrumReport report;
    report.metrics = domain.metrics();
    report.rings = rings;
    report.vertices = mesh.num_vertices();
    report.edges = mesh.num_edges();
    report.faces = mesh.num_triangles();
    report.h_max = complex.h_max;
    report.tolerance = 10.0 * complex.h_max / report.metrics.diameter;

    for (int k = 0; k < 2; ++k) {
        const PencilSpectrum s = solve_pencil(complex, k, how_many, options);
        report.pencil[k] = s.nonzero;
        report.zero_count[k] = s.zero_count;
        report.pf[k] = 1.0 / std::sqrt(s.nonzero.front());
    }
    report.hodge[0] = report.pencil[0];
    report.hodge[1] = merge_spectra(report.pencil[0], report.pencil[1], how_many);
    report.hodge[2] = report.pencil[1];

    report.bounds = explicit_bounds_check(report.metrics, report);
    verify_ordering(report);
    return report;
}

bool verify_ordering(SpectrumReport& report) {
    const double top = report.metrics.diameter / std::numbers::pi;
    report.ordering_margin[0] = (top - report.pf[0]) / top;
    report.ordering_margin[1] = (report.pf[0] - report.pf[1]) / report.pf[0];
    report.ordering_pass = report.ordering_margin[0] >= -report.tolerance &&
                           report.ordering_margin[1] >= -report.tolerance;
    return report.ordering_pass;
}

std::vector<BoundCheck> explicit_bounds_check(const DomainMetrics& metrics, const SpectrumReport& report) {
    const BallConstants unit = ball_pf_constants(1.0);
    const double tol = report.tolerance;
    std::vector<BoundCheck> out;

    // Weinberger: the disk of equal area maximizes the first Neumann eigenvalue
    BoundCheck neumann{"neumann", std::sqrt(metrics.area / std::numbers::pi) * unit.neumann, report.pf[0],
                       metrics.diameter / std::numbers::pi, false};
    neumann.pass = within(neumann.lower, neumann.value, neumann.upper, tol);
    out.push_back(neumann);

    BoundCheck dirichlet{"dirichlet", metrics.rho * unit.dirichlet, report.pf[1], metrics.R_out * unit.dirichlet,
                         false};
    dirichlet.pass = within(dirichlet.lower, dirichlet.value, dirichlet.upper, tol);
    out.push_back(dirichlet);
    return out;
}

double guerini_bound(int n, int k, double diameter) {
    if (n < 1 || k <= 0 || k >= n) throw Error(ErrorCode::InvalidInput, "guerini bound needs 0 < k < n");
    return std::sqrt(static_cast<double>(n)) * std::exp(1.5) / std::sqrt(static_cast<double>(k * (n - k))) *
           diameter;
}

SavoBounds savo_bounds(int n, int k, double gamma, double sigma_k_plus_1) {
    if (n < 1 || k < 0 || k > n) throw Error(ErrorCode::InvalidInput, "savo bounds need 0 <= k <= n");
    if (!(gamma > 0.0)) throw Error(ErrorCode::InvalidInput, "gamma must be positive");
    double binom = 1.0;
    for (int i = 1; i <= k; ++i) binom = binom * static_cast<double>(n - k + i) / static_cast<double>(i);
    SavoBounds b;
    b.lower = sigma_k_plus_1 / std::sqrt(static_cast<double>((k + 1) * (n + 2)) * std::pow(gamma, n));
    b.upper = gamma * std::sqrt(binom) * sigma_k_plus_1;
    return b;
}

ConvergenceStudy convergence_study(const StarDomain& domain, std::span<const double> eps_list, std::size_t rings,
                                   std::size_t hodge_count, const PencilOptions& options) {
    if (eps_list.empty()) throw Error(ErrorCode::InvalidInput, "eps_list is empty");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::InvalidInput, "eps_list must be descending");

    ConvergenceStudy study;
    study.eps_list.assign(eps_list.begin(), eps_list.end());
    study.rings = rings;
    study.hodge_count = hodge_count;
    const std::size_t how_many = std::max<std::size_t>(hodge_count, 1);
    study.reference = spectrum_report(domain, rings, how_many, options);

    for (double eps : eps_list) {
        const SmoothApproximation approx = build_smooth_approximation(domain, eps);
        ConvergenceEntry entry;
        entry.epsilon = eps;
        entry.sup_radius_error = approx.sup_radius_error;
        entry.report = spectrum_report(approx.boundary, rings, how_many, options);
        for (int k = 0; k < 2; ++k) entry.delta[k] = std::abs(entry.report.pf[k] - study.reference.pf[k]);
        for (int k = 0; k < 3; ++k) {
            const auto& a = entry.report.hodge[k];
            const auto& b = study.reference.hodge[k];
            for (std::size_t j = 0; j < std::min({a.size(), b.size(), hodge_count}); ++j)
                entry.hodge_delta[k].push_back(std::abs(a[j] - b[j]));
        }
        study.entries.push_back(std::move(entry));
    }

    study.pass = true;
    for (int k = 0; k < 2; ++k) {
        bool monotone = true;
        for (std::size_t i = 1; i < study.entries.size(); ++i)
            monotone = monotone && study.entries[i].delta[k] <= study.entries[i - 1].delta[k];
        study.pf_monotone[k] = monotone;
        study.final_gap_pass[k] = study.entries.back().delta[k] < 0.05 * study.reference.pf[k];
        study.pass = study.pass && monotone && study.final_gap_pass[k];
    }
    for (int k = 0; k < 3; ++k) {
        bool monotone = true;
        for (std::size_t i = 1; i < study.entries.size(); ++i) {
            const auto& prev = study.entries[i - 1].hodge_delta[k];
            const auto& cur = study.entries[i].hodge_delta[k];
            for (std::size_t j = 0; j < std::min(prev.size(), cur.size()); ++j)
                monotone = monotone && cur[j] <= (1.0 + study.hodge_slack) * prev[j];
        }
        study.hodge_monotone[k] = monotone;
        study.pass = study.pass && monotone;
    }
    return study;
}

} // namespace stardomain
