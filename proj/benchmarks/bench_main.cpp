// Microbenchmarks for the hot paths: sparse arithmetic, composition,
// reduction and complex exploration.

#include "tamesl2/catalog.hpp"
#include "tamesl2/complex.hpp"
#include "tamesl2/tame.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace tamesl2;

namespace {

Poly random_poly(std::mt19937_64& rng, int terms, uint32_t max_deg) {
    std::uniform_int_distribution<uint32_t> de(0, max_deg);
    std::uniform_int_distribution<int> co(-5, 5);
    Poly p;
    for (int t = 0; t < terms; ++t) {
        Exponent4 m{{de(rng), de(rng), de(rng), de(rng)}};
        long c = co(rng);
        if (c) p = p + Poly::monomial(m, Coeff(c));
    }
    return p.is_zero() ? Poly::variable(0) : p;
}

void bm_poly_mul(benchmark::State& state) {
    std::mt19937_64 rng(7);
    Poly a = random_poly(rng, (int)state.range(0), 6);
    Poly b = random_poly(rng, (int)state.range(0), 6);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(bm_poly_mul)->Arg(16)->Arg(64)->Arg(256);

void bm_substitute_elementary(benchmark::State& state) {
    TameAuto g = catalog::example_g();
    ElementaryAuto e{ElementaryFamily::E24,
                     Poly::monomial(Exponent4{{2, 1, 0, 0}}, Coeff(3))};
    for (auto _ : state) benchmark::DoNotOptimize(compose_elementary(e, g));
}
BENCHMARK(bm_substitute_elementary);

void bm_quotient_normal_form(benchmark::State& state) {
    std::mt19937_64 rng(11);
    Poly p = random_poly(rng, 24, 4) * Poly::q() + random_poly(rng, 8, 3);
    for (auto _ : state) benchmark::DoNotOptimize(quotient_normal_form(p));
}
BENCHMARK(bm_quotient_normal_form);

void bm_jacobian(benchmark::State& state) {
    TameAuto g = catalog::example_g();
    for (auto _ : state)
        benchmark::DoNotOptimize(jacobian(g.c[0], g.c[1], g.c[2], g.c[3]));
}
BENCHMARK(bm_jacobian);

void bm_reduce_example_g(benchmark::State& state) {
    TameAuto g = catalog::example_g();
    for (auto _ : state) benchmark::DoNotOptimize(reduce(g));
}
BENCHMARK(bm_reduce_example_g);

void bm_reduce_henon2(benchmark::State& state) {
    std::vector<catalog::HenonParams> ps = {
        {Coeff(1), Coeff(1), Poly::monomial(Exponent4{{2, 0, 0, 0}}, Coeff(1))},
        {Coeff(1), Coeff(-1), Poly::monomial(Exponent4{{0, 2, 0, 0}}, Coeff(1))}};
    TameAuto f = evaluate_word(catalog::henon_word(ps));
    for (auto _ : state) benchmark::DoNotOptimize(reduce(f));
}
BENCHMARK(bm_reduce_henon2);

void bm_explore_depth1(benchmark::State& state) {
    std::vector<Poly> sample{Poly::variable(0)};
    for (auto _ : state) {
        SubComplex s = explore({}, 1, sample);
        benchmark::DoNotOptimize(s.vertex_count());
    }
}
BENCHMARK(bm_explore_depth1);

} // namespace

BENCHMARK_MAIN();
