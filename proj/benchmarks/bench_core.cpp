#include <benchmark/benchmark.h>

#include <sstream>

#include "zh/arith.hpp"
#include "zh/characters.hpp"
#include "zh/elliptic.hpp"
#include "zh/ff.hpp"
#include "zh/gm.hpp"
#include "zh/localzeta.hpp"
#include "zh/strata.hpp"

namespace {

void BM_Factorize(benchmark::State& state) {
    zh::arith::u64 n = static_cast<zh::arith::u64>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(zh::arith::factorize(n));
}
BENCHMARK(BM_Factorize)->Arg(600851475143)->Arg(10778947366)->Arg(87178291199);

void BM_FieldBuild(benchmark::State& state) {
    for (auto _ : state) {
        zh::ff::Field F = zh::ff::Field::make(5, static_cast<unsigned>(state.range(0)));
        benchmark::DoNotOptimize(F.q());
    }
}
BENCHMARK(BM_FieldBuild)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_CountPointsEnum(benchmark::State& state) {
    zh::elliptic::Curve c = zh::elliptic::make_curve(1, 1);
    unsigned nu = static_cast<unsigned>(state.range(0));
    zh::ff::Field::shared(5, nu); // warm the table cache; measure the sweep
    for (auto _ : state) benchmark::DoNotOptimize(zh::elliptic::count_points_enum(c, 5, nu));
}
BENCHMARK(BM_CountPointsEnum)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_GroupStructure(benchmark::State& state) {
    zh::elliptic::Curve c = zh::elliptic::make_curve(1, 1);
    unsigned nu = static_cast<unsigned>(state.range(0));
    zh::ff::Field::shared(5, nu);
    for (auto _ : state) benchmark::DoNotOptimize(zh::elliptic::group_structure(c, 5, nu));
}
BENCHMARK(BM_GroupStructure)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Eq13(benchmark::State& state) {
    zh::elliptic::Curve c = zh::elliptic::make_curve(1, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            zh::elliptic::verify_eq13_local(c, 5, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_Eq13)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_Eq7Product(benchmark::State& state) {
    zh::arith::u64 n = static_cast<zh::arith::u64>(state.range(0));
    zh::arith::u64 p = static_cast<zh::arith::u64>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(zh::characters::verify_eq7_local(n, p));
}
BENCHMARK(BM_Eq7Product)->Args({97, 61})->Args({100, 7})->Args({96, 97});

void BM_CyclotomicPoly(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(zh::gm::cyclotomic_poly(static_cast<zh::arith::u64>(state.range(0))));
}
BENCHMARK(BM_CyclotomicPoly)->Arg(105)->Arg(1024);

void BM_Eq25(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(zh::gm::verify_eq25_local(13, 4, 28560));
}
BENCHMARK(BM_Eq25)->Unit(benchmark::kMillisecond);

void BM_Stratification(benchmark::State& state) {
    std::istringstream in("2\nx0^3+x1^3+x2^3\n");
    zh::strata::OpenSubschemeSpec spec = zh::strata::parse_subscheme(in);
    zh::arith::u64 p = static_cast<zh::arith::u64>(state.range(0));
    unsigned d = static_cast<unsigned>(state.range(1));
    zh::ff::Field::shared(p, d);
    for (auto _ : state)
        benchmark::DoNotOptimize(zh::strata::verify_stratification(spec, p, d));
}
BENCHMARK(BM_Stratification)->Args({7, 1})->Args({13, 2})->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
