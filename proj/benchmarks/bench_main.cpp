#include <stardomain/approximation.hpp>
#include <stardomain/derham.hpp>
#include <stardomain/eigen_solvers.hpp>
#include <stardomain/mesh.hpp>
#include <stardomain/random.hpp>
#include <stardomain/spectra.hpp>

#include <benchmark/benchmark.h>

#include <vector>

using namespace stardomain;

namespace {

std::vector<Point> sample_points(std::size_t n) {
    CounterRng rng(99);
    std::vector<Point> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pts.emplace_back(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0));
    return pts;
}

} // namespace

static void BM_GaugePolygon(benchmark::State& state) {
    const auto domain = make_ellipse_polygon(2.0, 1.0, static_cast<std::size_t>(state.range(0)));
    const auto pts = sample_points(1024);
    for (auto _ : state)
        for (const Point& p : pts) benchmark::DoNotOptimize(domain.gauge(p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_GaugePolygon)->Arg(4)->Arg(64)->Arg(256);

static void BM_OrientedDistance(benchmark::State& state) {
    const auto domain = make_ellipse_polygon(2.0, 1.0, static_cast<std::size_t>(state.range(0)));
    const auto pts = sample_points(1024);
    for (auto _ : state)
        for (const Point& p : pts) benchmark::DoNotOptimize(domain.oriented_distance(p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_OrientedDistance)->Arg(4)->Arg(256);

static void BM_MollifiedDistance(benchmark::State& state) {
    const auto domain = make_square(1.0);
    const Mollifier moll(0.1, static_cast<std::size_t>(state.range(0)));
    const auto pts = sample_points(256);
    for (auto _ : state)
        for (const Point& p : pts) benchmark::DoNotOptimize(regularized_distance(domain, moll, p));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pts.size()));
}
BENCHMARK(BM_MollifiedDistance)->Arg(4)->Arg(8)->Arg(16);

static void BM_AssembleComplex(benchmark::State& state) {
    const auto mesh = domain_mesh(make_square(1.0), static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(assemble_complex(mesh));
    state.counters["faces"] = static_cast<double>(mesh.num_triangles());
}
BENCHMARK(BM_AssembleComplex)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

static void BM_DenseEigensolve(benchmark::State& state) {
    const auto c = assemble_complex(domain_mesh(make_square(1.0), static_cast<std::size_t>(state.range(0))));
    const Eigen::MatrixXd A(stiffness(c, 0));
    const Eigen::MatrixXd M(c.m0);
    for (auto _ : state) benchmark::DoNotOptimize(generalized_eigs(A, M, 5));
    state.counters["n"] = static_cast<double>(A.rows());
}
BENCHMARK(BM_DenseEigensolve)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

static void BM_PfConstantIterative(benchmark::State& state) {
    const auto c = assemble_complex(domain_mesh(make_square(1.0), static_cast<std::size_t>(state.range(0))));
    PencilOptions options;
    options.method = EigenMethod::Iterative;
    for (auto _ : state) benchmark::DoNotOptimize(pf_constant(c, 1, options));
}
BENCHMARK(BM_PfConstantIterative)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
