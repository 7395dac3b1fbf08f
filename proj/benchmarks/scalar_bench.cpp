#include <benchmark/benchmark.h>

#include <vector>

#include "m2sg/pm2.hpp"
#include "m2sg/sampling.hpp"

using namespace m2sg;

namespace {

void BM_ScalarMul(benchmark::State& state) {
  const auto field = CyclotomicField::get(static_cast<std::uint32_t>(state.range(0)));
  Rng rng(1);
  std::vector<CycloScalar> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(random_scalar(field, rng));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(xs[i % 64] * xs[(i + 1) % 64]);
    ++i;
  }
}
BENCHMARK(BM_ScalarMul)->Arg(12)->Arg(20)->Arg(60);

void BM_ScalarInverse(benchmark::State& state) {
  const auto field = CyclotomicField::get(12);
  Rng rng(2);
  std::vector<CycloScalar> xs;
  for (int i = 0; i < 64; ++i) xs.push_back(random_nonzero_scalar(field, rng));
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(xs[i++ % 64].inverse());
}
BENCHMARK(BM_ScalarInverse);

void BM_ProjectiveProduct(benchmark::State& state) {
  const auto field = CyclotomicField::get(12);
  Rng rng(3);
  std::vector<PM2Elem> xs;
  for (int i = 0; i < 64; ++i) {
    xs.push_back(project(random_matrix(field, rng, static_cast<int>(state.range(0)))));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pm2_mul(xs[i % 64], xs[(i + 7) % 64]));
    ++i;
  }
}
BENCHMARK(BM_ProjectiveProduct)->Arg(1)->Arg(2);

}  // namespace
