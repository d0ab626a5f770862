#include <benchmark/benchmark.h>

#include "maxrank/coeff_matrix.hpp"
#include "maxrank/generators.hpp"
#include "maxrank/partition.hpp"
#include "maxrank/polynomial.hpp"
#include "maxrank/transforms.hpp"

using namespace maxrank;

namespace {

void BM_PolyMul(benchmark::State& state) {
    const std::size_t terms = static_cast<std::size_t>(state.range(0));
    UniversePtr u = yz_universe(4, 4);
    Field f(101);
    RandomPolyParams p;
    p.terms = terms;
    p.max_degree = 4;
    Polynomial a = random_polynomial(u, f, p, 1);
    Polynomial b = random_polynomial(u, f, p, 2);
    for (auto _ : state) {
        Polynomial c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_PolyMul)->Arg(16)->Arg(64)->Arg(256);

void BM_ImmBuildAndRank(benchmark::State& state) {
    const std::size_t n = static_cast<std::size_t>(state.range(0));
    Field f(2);
    for (auto _ : state) {
        Polynomial imm = gen_imm(n, 3, f);
        PolyCoeffMatrix m = PolyCoeffMatrix::build(imm, Partition::imm(n, 3));
        MaxrankResult r = maxrank::maxrank(m);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_ImmBuildAndRank)->Arg(2)->Arg(3)->Arg(4);

void BM_ExhaustiveMaxrank(benchmark::State& state) {
    // Four entry variables over GF(3): 81 substitutions per search.
    UniversePtr u = yz_universe(2, 2);
    Field f(3);
    RandomPolyParams p;
    p.terms = 6;
    p.max_degree = 3;
    Polynomial a = random_polynomial(u, f, p, 7);
    PolyCoeffMatrix m = PolyCoeffMatrix::build(a, YzSplit::by_prefix(u));
    for (auto _ : state) {
        MaxrankResult r = maxrank::maxrank(m);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_ExhaustiveMaxrank);

void BM_FischerDecompose(benchmark::State& state) {
    const std::size_t d = static_cast<std::size_t>(state.range(0));
    Field f(101);
    SpsGenParams p;
    p.top_fanin = 1;
    p.gate_fanin = d;
    p.y_count = 3;
    p.z_count = 3;
    SigmaPiSigma c = gen_random_sps(p, f, 11);
    for (auto _ : state) {
        PowerSumForm ps = fischer_decompose(c.gates[0], f, c.universe);
        benchmark::DoNotOptimize(ps.terms.size());
    }
}
BENCHMARK(BM_FischerDecompose)->Arg(3)->Arg(6)->Arg(9);

} // namespace

BENCHMARK_MAIN();
