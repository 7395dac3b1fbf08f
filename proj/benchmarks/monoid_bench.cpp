#include <benchmark/benchmark.h>

#include <vector>

#include "m2sg/bfg.hpp"
#include "m2sg/monoid.hpp"
#include "m2sg/subgroups.hpp"

using namespace m2sg;

namespace {

const FieldPtr Q12 = CyclotomicField::get(12);

std::vector<ProjPoint> ground(std::size_t k) {
  std::vector<ProjPoint> out{ProjPoint::affine(CycloScalar(Q12, 0L)), ProjPoint::infinity(Q12)};
  for (long x = 1; out.size() < k; ++x) out.push_back(ProjPoint::affine(CycloScalar(Q12, x)));
  return out;
}

void BM_GroupClosure(benchmark::State& state) {
  const auto kind = static_cast<GroupKind>(state.range(0));
  const auto gens = catalog_generators(GroupSpec::catalog(kind), Q12);
  for (auto _ : state) benchmark::DoNotOptimize(group_closure(gens));
}
BENCHMARK(BM_GroupClosure)
    ->Arg(static_cast<int>(GroupKind::a4))
    ->Arg(static_cast<int>(GroupKind::s4));

void BM_MonoidClosure(benchmark::State& state) {
  const auto z2 = CycloScalar::zeta_power(Q12, 2);
  const std::vector<Mat2> gens{z2 * Mat2::from_ints(Q12, 0, 0, 0, 1),
                               Mat2::from_ints(Q12, 1, 0, 0, 0),
                               CycloScalar(Q12, 2L) * Mat2::from_ints(Q12, 1, 0, 0, 0)};
  for (auto _ : state) benchmark::DoNotOptimize(closure_monoid(gens));
}
BENCHMARK(BM_MonoidClosure);

void BM_Enumerate(benchmark::State& state) {
  const auto g = ground(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_closed_subsets(g));
}
BENCHMARK(BM_Enumerate)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Classify(benchmark::State& state) {
  const auto g = ground(4);
  const auto sets = enumerate_closed_subsets(g);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(classify(sets[i++ % sets.size()]));
}
BENCHMARK(BM_Classify);

}  // namespace
