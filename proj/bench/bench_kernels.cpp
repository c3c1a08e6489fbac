// Serial reference vs OpenMP kernels.

#include <benchmark/benchmark.h>

#include "cfou/estimator.hpp"
#include "cfou/kernels.hpp"
#include "cfou/parallel.hpp"

using namespace cfou;

namespace {

const DriftParam kGamma(1.0, 1.0);
const HurstParam kH(0.35);

struct Fixture {
  explicit Fixture(std::size_t n)
      : g(kernels::gram_operator(kH, 10.0, n)),
        a(kernels::kernel_matrix({kernels::KernelKind::Psi, kGamma, 10.0}, n)),
        b(kernels::kernel_matrix({kernels::KernelKind::Hh, kGamma, 10.0}, n)),
        acov(g.first_column().begin(), g.first_column().end()) {}
  linalg::SymmetricToeplitz g;
  CMatrix a, b;
  std::vector<double> acov;
};

void BM_TensorFormParallel(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(par::tensor_form(f.a, f.b, f.g));
}

void BM_TensorFormSerial(benchmark::State& st) {
  Fixture f(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(serial::tensor_form(f.a, f.b, f.acov));
}

void BM_ContractionParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::contraction_norm(kGamma, kH, 10.0, st.range(0)));
}

void BM_ContractionSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(kernels::contraction_norm_serial(kGamma, kH, 10.0, st.range(0)));
}

estimator::McConfig mc_config() {
  estimator::McConfig cfg;
  cfg.t_list = {10.0};
  cfg.n_steps = 4096;
  cfg.n_reps = 32;
  return cfg;
}

void BM_McParallel(benchmark::State& st) {
  const auto cfg = mc_config();
  for (auto _ : st) benchmark::DoNotOptimize(estimator::run_mc_experiment(cfg));
}

void BM_McSerial(benchmark::State& st) {
  const auto cfg = mc_config();
  for (auto _ : st) benchmark::DoNotOptimize(estimator::run_mc_experiment_serial(cfg));
}

}  // namespace

BENCHMARK(BM_TensorFormParallel)->Arg(128)->Arg(256);
BENCHMARK(BM_TensorFormSerial)->Arg(128)->Arg(256);
BENCHMARK(BM_ContractionParallel)->Arg(32)->Arg(48);
BENCHMARK(BM_ContractionSerial)->Arg(32)->Arg(48);
BENCHMARK(BM_McParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_McSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
