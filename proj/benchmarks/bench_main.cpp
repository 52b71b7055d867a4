#include <benchmark/benchmark.h>

#include <vector>

#include "sbs/construct.hpp"
#include "sbs/decide.hpp"
#include "sbs/diophantine.hpp"

namespace {

using namespace sbs;

void bm_solve_linear_combination(benchmark::State& state) {
  // Coefficients M_i = m / m_i for pairwise coprime m_i, extra = m.
  const std::vector<int64_t> moduli{7, 11, 13, 17};
  int64_t m = 1;
  for (auto q : moduli) m *= q;
  std::vector<int64_t> coeffs;
  for (auto q : moduli) coeffs.push_back(m / q);
  for (auto _ : state) benchmark::DoNotOptimize(solve_linear_combination(coeffs, moduli, m, 1));
}
BENCHMARK(bm_solve_linear_combination);

void bm_construct_rank_one(benchmark::State& state) {
  const int64_t primes[] = {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<TorsionPart> parts;
  for (int64_t i = 0; i < state.range(0); ++i) parts.push_back({primes[i], 1});
  for (auto _ : state) benchmark::DoNotOptimize(construct_rank_one(RankOneRequest{parts, true}));
}
BENCHMARK(bm_construct_rank_one)->DenseRange(1, 11, 5);

void bm_blowup_raise_rank(benchmark::State& state) {
  auto base = construct_rank_one(RankOneRequest{{{4, 1}, {3, 2}, {5, 1}}, false});
  for (auto _ : state) {
    auto cert = base;
    for (int64_t k = 1; k < state.range(0); ++k) cert = blowup_raise_rank(cert, false);
    benchmark::DoNotOptimize(cert);
  }
}
BENCHMARK(bm_blowup_raise_rank)->Arg(2)->Arg(4)->Arg(8);

void bm_decide_sasakian(benchmark::State& state) {
  const auto h = make_h2(state.range(0), std::vector<TorsionSummand>{{7, 6}, {11, 2}}, BardenIndex(0));
  for (auto _ : state) benchmark::DoNotOptimize(decide_sasakian(h));
}
BENCHMARK(bm_decide_sasakian)->Arg(0)->Arg(1)->Arg(3);

void bm_decide_sphere_no(benchmark::State& state) {
  const auto h = make_h2(0, std::vector<TorsionSummand>{{2, 4}, {3, 6}, {25, 2}}, BardenIndex(0));
  for (auto _ : state) benchmark::DoNotOptimize(decide_semiregular_sphere(h));
}
BENCHMARK(bm_decide_sphere_no);

}  // namespace

BENCHMARK_MAIN();
