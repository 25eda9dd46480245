#include <benchmark/benchmark.h>

#include "indprior/eta_moments.hpp"
#include "indprior/genfunc.hpp"
#include "indprior/inference.hpp"
#include "indprior/sim_harness.hpp"

using namespace indprior;

static void BM_EtaMomentQuadrature(benchmark::State& state) {
  const BetaShape shape{2.633, 1.129};
  for (auto _ : state) {
    auto m = eta_mean_var(shape);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_EtaMomentQuadrature);

static void BM_EtaMomentAnalytic(benchmark::State& state) {
  const BetaShape shape{2.633, 1.129};
  for (auto _ : state) {
    auto m = eta_mean_var_analytic(shape);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_EtaMomentAnalytic);

static void BM_RootLogisticTable(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto table = root_logistic_table(p);
    benchmark::DoNotOptimize(table);
  }
  state.SetLabel("p=" + std::to_string(p));
}
BENCHMARK(BM_RootLogisticTable)->Arg(0)->Arg(3)->Arg(9)->Unit(benchmark::kMillisecond);

static void BM_MhSample(benchmark::State& state) {
  ScenarioSpec spec = scenario1_spec(static_cast<std::size_t>(state.range(0)));
  spec.master_seed = 11;
  const Dataset data = generate_scenario(spec, 0);
  const auto prior = logistic_matched_priors(1);
  for (auto _ : state) {
    auto chains = mh_sample(data, prior, {1, 3000, 1000}, 7);
    benchmark::DoNotOptimize(chains);
  }
  state.SetItemsProcessed(state.iterations() * 3000);
  state.SetLabel("n=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_MhSample)->Arg(15)->Arg(100)->Unit(benchmark::kMillisecond);

static void BM_LogPosterior(benchmark::State& state) {
  ScenarioSpec spec = scenario23_spec(static_cast<std::size_t>(state.range(0)));
  spec.master_seed = 11;
  const Dataset data = generate_scenario(spec, 0);
  const auto prior = logistic_matched_priors(3);
  const std::vector<double> beta = {1.0, 0.2, -0.4, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_posterior(beta, data, prior));
  }
  state.SetLabel("n=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_LogPosterior)->Arg(50)->Arg(1000);

BENCHMARK_MAIN();
