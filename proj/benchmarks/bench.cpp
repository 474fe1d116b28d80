// SPDX-License-Identifier: Apache-2.0
#include "qccs/protocols.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qccs;

namespace {

void BM_step_sdc_root(benchmark::State& state) {
    auto model = build_sdc();
    Configuration root = model.impl_config();
    for (auto _ : state) benchmark::DoNotOptimize(step(model.program, root));
}
BENCHMARK(BM_step_sdc_root);

void BM_weak_closure_teleport(benchmark::State& state) {
    auto model = build_teleport();
    Configuration root = model.impl_config();
    auto ts = step(model.program, root);
    Distribution after_input = ts.front().target;
    for (auto _ : state) {
        WeakCache cache;
        WeakOptions wo;
        wo.cache = &cache;
        benchmark::DoNotOptimize(weak_closure(model.program, after_input, wo));
    }
}
BENCHMARK(BM_weak_closure_teleport);

void BM_weight_function(benchmark::State& state) {
    Program p = empty_program_with_builtins();
    p.universe = QubitRegister::canonical({"t"});
    p.classical_channels["tok"] = {Rational(0), Rational(1), Rational(2), Rational(3)};
    std::vector<Configuration> tok;
    for (int k = 0; k < 4; ++k)
        tok.emplace_back(ProcessTerm::c_output("tok", Expr::literal(Rational(k)), ProcessTerm::nil()),
                         zeros_state(p.universe));
    Distribution mu, nu;
    for (int k = 0; k < 4; ++k) {
        mu.add(tok[static_cast<std::size_t>(k)], 0.25);
        nu.add(tok[static_cast<std::size_t>(k)], 0.25);
    }
    auto related = [](const Configuration&, const Configuration&) { return true; };
    for (auto _ : state) benchmark::DoNotOptimize(weight_function(mu, nu, related));
}
BENCHMARK(BM_weight_function);

void BM_bisimilar_sdc(benchmark::State& state) {
    auto model = build_sdc();
    CheckOptions opts;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            bisimilar(model.program, model.impl_config(), model.spec_config(), opts));
}
BENCHMARK(BM_bisimilar_sdc);

void BM_jacobi_16(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 1);
    ComplexMatrix a(16, 16);
    for (std::size_t i = 0; i < 16; ++i) {
        a.at(i, i) = g(rng);
        for (std::size_t j = i + 1; j < 16; ++j) {
            Complex v(g(rng), g(rng));
            a.at(i, j) = v;
            a.at(j, i) = std::conj(v);
        }
    }
    for (auto _ : state) {
        std::vector<double> evs;
        ComplexMatrix vecs;
        jacobi_hermitian(a, evs, vecs);
        benchmark::DoNotOptimize(evs);
    }
}
BENCHMARK(BM_jacobi_16);

} // namespace

BENCHMARK_MAIN();
