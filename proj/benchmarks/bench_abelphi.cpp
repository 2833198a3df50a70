#include <benchmark/benchmark.h>

#include <filesystem>

#include "abelphi/cyclo.hpp"
#include "abelphi/minus.hpp"
#include "abelphi/padic.hpp"
#include "abelphi/real_cubic.hpp"
#include "abelphi/stickelberger.hpp"
#include "harness.hpp"

using namespace abelphi;

namespace {

RationalCharacter character(u64 order, u64 conductor, bool odd) {
    for (auto& chi : rational_orbits(conductor))
        if (chi.order == order && chi.conductor == conductor && chi.odd() == odd) return chi;
    throw std::runtime_error("no such character");
}

void BM_MinusClassNumber47(benchmark::State& state) {
    auto chi = character(46, 47, true);
    for (auto _ : state) benchmark::DoNotOptimize(minus_class_number(chi, {139}));
}
BENCHMARK(BM_MinusClassNumber47)->Unit(benchmark::kMillisecond);

void BM_RationalOrbits(benchmark::State& state) {
    const u64 m = static_cast<u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(rational_orbits(m));
}
BENCHMARK(BM_RationalOrbits)->Arg(47)->Arg(313)->Arg(7351)->Unit(benchmark::kMicrosecond);

void BM_Twist(benchmark::State& state) {
    const u64 f = static_cast<u64>(state.range(0));
    auto st = stickelberger_element(make_selector(character(f - 1, f, true)));
    for (auto _ : state) benchmark::DoNotOptimize(twist_c(st, 3));
}
BENCHMARK(BM_Twist)->Arg(47)->Arg(199)->Unit(benchmark::kMicrosecond);

void BM_PadicContext(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(build_padic_context(21, 7, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_PadicContext)->Arg(3)->Arg(10)->Unit(benchmark::kMicrosecond);

void BM_LimitElement(benchmark::State& state) {
    auto sel = make_selector(character(3, 7351, false));
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(limit_element(sel, 7, n, 2));
}
BENCHMARK(BM_LimitElement)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_CubicFixture(benchmark::State& state) {
    const std::filesystem::path dir = ABELPHI_FIXTURE_DIR;
    auto fx = harness::load_cubic_fixture(dir / "cubic" / "f7351.json");
    harness::RunConfig cfg;
    cfg.no_torsion = true;
    for (auto _ : state) benchmark::DoNotOptimize(harness::run_cubic_fixture(fx, cfg));
}
BENCHMARK(BM_CubicFixture)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
