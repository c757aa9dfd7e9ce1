#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include <horoflow/counterexample.hpp>
#include <horoflow/fields.hpp>
#include <horoflow/group.hpp>

using namespace horoflow;

namespace {

GradedAlgebra engel() {
  return GradedAlgebra({2, 1, 1}, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}}, "engel");
}

void bch_pairs(benchmark::State& state, const GradedAlgebra& alg) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<GroupElement> pts;
  for (int k = 0; k < 256; ++k) {
    Vector v(alg.dimension());
    for (double& c : v) c = u(rng);
    pts.emplace_back(std::move(v));
  }
  std::size_t k = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bch_multiply(alg, pts[k % 256], pts[(k + 1) % 256]));
    ++k;
  }
}

void BM_BchHeisenberg(benchmark::State& state) { bch_pairs(state, heisenberg()); }
BENCHMARK(BM_BchHeisenberg);

void BM_BchEngel(benchmark::State& state) { bch_pairs(state, engel()); }
BENCHMARK(BM_BchEngel);

void BM_ComputeP(benchmark::State& state) {
  const GradedAlgebra alg = engel();
  for (auto _ : state) {
    for (int i = 0; i < alg.dimension(); ++i) benchmark::DoNotOptimize(compute_p(alg, i));
  }
}
BENCHMARK(BM_ComputeP);

void BM_AutonomousF(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u01(0.0, 1.0), u03(0.0, 3.0);
  std::vector<std::array<double, 3>> args;
  for (int k = 0; k < 256; ++k) args.push_back({u01(rng), u03(rng), u03(rng)});
  std::size_t k = 0;
  for (auto _ : state) {
    const auto& a = args[k++ % 256];
    benchmark::DoNotOptimize(autonomous_f(a[0], a[1], a[2]));
  }
}
BENCHMARK(BM_AutonomousF);

void BM_LadderRung(benchmark::State& state) {
  SingularUVSystem sys;
  sys.variant = state.range(0) == 0 ? Variant::time_dependent : Variant::autonomous;
  sys.eps = 0.1 / 1024.0;
  const IntegratorConfig cfg = uv_integrator_config(0.3, 2048);
  for (auto _ : state) benchmark::DoNotOptimize(solve_regularized(sys, 0.3, cfg));
}
BENCHMARK(BM_LadderRung)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
