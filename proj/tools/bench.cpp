#include <benchmark/benchmark.h>
#include <omp.h>

#include "chevlab/folang.hpp"

using namespace chevlab;

namespace {

RepPtr rep_of(const char* system, Lattice l) {
  return Representation::make(std::make_shared<const RootSystem>(RootSystem::parse(system)), l);
}

const MatrixGroupPtr& psl3_2() {
  static const MatrixGroupPtr g = elementary_group(rep_of("A2", Lattice::Adjoint), FiniteRing::parse("Z/2"));
  return g;
}

const MatrixGroupPtr& psl3_3() {
  static const MatrixGroupPtr g = elementary_group(rep_of("A2", Lattice::Adjoint), FiniteRing::parse("Z/3"));
  return g;
}

void threads(benchmark::State& state) { omp_set_num_threads(static_cast<int>(state.range(0))); }

void BM_ClosureSerial(benchmark::State& state) {
  auto rep = rep_of("C2", Lattice::SimplyConnected);
  auto ring = FiniteRing::parse("Z/3");
  auto gens = elementary_generators(*rep, *ring);
  for (auto _ : state) benchmark::DoNotOptimize(closure_serial(rep, ring, gens)->order());
}

void BM_ClosureParallel(benchmark::State& state) {
  threads(state);
  auto rep = rep_of("C2", Lattice::SimplyConnected);
  auto ring = FiniteRing::parse("Z/3");
  auto gens = elementary_generators(*rep, *ring);
  for (auto _ : state) benchmark::DoNotOptimize(closure(rep, ring, gens)->order());
}

void BM_BoundedGenerationSerial(benchmark::State& state) {
  const auto& g = psl3_3();
  auto x = xm_set(*g, 1, {});
  for (auto _ : state) benchmark::DoNotOptimize(bounded_generation_serial(*g, x, 2).generated);
}

void BM_BoundedGenerationParallel(benchmark::State& state) {
  threads(state);
  const auto& g = psl3_3();
  auto x = xm_set(*g, 1, {});
  for (auto _ : state) benchmark::DoNotOptimize(bounded_generation(*g, x, 2).generated);
}

const Formula& bench_formula() {
  static const Formula f = parse_formula("E z. x*z = z*y & A w. [w,z] = e -> w = e");
  return f;
}

void BM_EvaluatorReference(benchmark::State& state) {
  Structure s(psl3_2());
  Evaluator ev(s, bench_formula(), {"x", "y"});
  for (auto _ : state) benchmark::DoNotOptimize(ev.solutions_reference().size());
}

void BM_EvaluatorMemoized(benchmark::State& state) {
  threads(state);
  Structure s(psl3_2());
  for (auto _ : state) {
    Evaluator ev(s, bench_formula(), {"x", "y"});
    benchmark::DoNotOptimize(ev.solutions().size());
  }
}

}  // namespace

BENCHMARK(BM_ClosureSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClosureParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundedGenerationSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BoundedGenerationParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluatorReference)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluatorMemoized)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
