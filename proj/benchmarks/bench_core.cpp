#include <benchmark/benchmark.h>

#include "siegel/geometry.hpp"
#include "siegel/integrate.hpp"
#include "siegel/kernel.hpp"
#include "siegel/metric.hpp"
#include "siegel/rng.hpp"
#include "siegel/sampling.hpp"

namespace {

siegel::CPoint make_point(unsigned n, double x, double height) {
    return siegel::CPoint(std::vector<siegel::cplx>(n - 1, siegel::cplx(0.1, 0.05)),
                          siegel::cplx(x, height + 0.0125 * (n - 1)));
}

void BM_BergmanKernel(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const siegel::CPoint z = make_point(n, 0.3, 1.5);
    const siegel::CPoint w = make_point(n, -0.7, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(siegel::bergman_kernel(z, w));
    }
}
BENCHMARK(BM_BergmanKernel)->Arg(1)->Arg(2);

void BM_BergmanDistance(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const siegel::CPoint z = make_point(n, 0.3, 1.5);
    const siegel::CPoint w = make_point(n, -0.7, 0.8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(siegel::bergman_distance(z, w));
    }
}
BENCHMARK(BM_BergmanDistance)->Arg(1)->Arg(2);

void BM_UnitBallSample(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    siegel::CounterRng rng(42, 0);
    std::vector<siegel::cplx> u(n);
    for (auto _ : state) {
        siegel::fill_uniform_unit_ball(rng, u);
        benchmark::DoNotOptimize(u.data());
    }
}
BENCHMARK(BM_UnitBallSample)->Arg(1)->Arg(2);

void BM_WeightedBallDraw(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const siegel::BallSampler sampler(
        siegel::BergmanBall(siegel::CPoint::base_point(n), 1.0));
    siegel::CounterRng rng(42, 0);
    siegel::CPoint w;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.draw_weighted(rng, w));
    }
}
BENCHMARK(BM_WeightedBallDraw)->Arg(1)->Arg(2);

void BM_IntegrateWeightedIntegral(benchmark::State& state) {
    const unsigned n = static_cast<unsigned>(state.range(0));
    const siegel::CPoint z = siegel::CPoint::base_point(n);
    siegel::Integrand f = [z](const siegel::CPoint& w) -> siegel::cplx {
        const double d2 = std::norm(siegel::rho(z, w));
        return siegel::cplx(1.0 / (d2 * d2), 0.0);
    };
    for (auto _ : state) {
        benchmark::DoNotOptimize(siegel::integrate_siegel(f, n, 100000, 7, 1));
    }
}
BENCHMARK(BM_IntegrateWeightedIntegral)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
