#include <benchmark/benchmark.h>

#include <random>

#include "ptsim/completion.hpp"
#include "ptsim/metric.hpp"
#include "ptsim/nosignaling.hpp"
#include "ptsim/pipeline.hpp"

namespace {

using namespace ptsim;

ComplexMatrix random_matrix(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(gen), u(gen));
  return m;
}

// S·diag(1..n)·S⁻¹ with S = I + 0.3·G.
ComplexMatrix random_unbroken(Eigen::Index n, std::uint64_t seed) {
  const ComplexMatrix s = identity(n) + 0.3 * random_matrix(n, seed);
  ComplexVector d(n);
  for (Eigen::Index i = 0; i < n; ++i) d(i) = static_cast<double>(i + 1);
  return s * d.asDiagonal() * s.inverse();
}

void BM_MatrixExp(benchmark::State& state) {
  const ComplexMatrix a = random_matrix(state.range(0), 1);
  for (auto _ : state) benchmark::DoNotOptimize(matrix_exp(a));
}
BENCHMARK(BM_MatrixExp)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_BuildDilation(benchmark::State& state) {
  const ComplexMatrix h = random_unbroken(state.range(0), 2);
  const PTSystem sys(h, pt_pair_for_unbroken(h));
  for (auto _ : state) benchmark::DoNotOptimize(build_dilation(sys));
}
BENCHMARK(BM_BuildDilation)->Arg(2)->Arg(4)->Arg(8);

void BM_Completion(benchmark::State& state) {
  const Eigen::Index n = state.range(0);
  std::vector<ComplexVector> m_basis, n_basis;
  for (Eigen::Index j = 0; j < n; ++j) {
    m_basis.push_back(ComplexVector::Unit(2 * n, j));
    n_basis.push_back(ComplexVector::Unit(2 * n, n + j));
  }
  const SubspaceMap map(m_basis, n_basis, random_matrix(n, 3));
  for (auto _ : state) benchmark::DoNotOptimize(complete(map));
}
BENCHMARK(BM_Completion)->Arg(2)->Arg(4)->Arg(8);

void BM_RunSimulation(benchmark::State& state) {
  const Dilation d = gunther_dilation(0.6, 1.0, 0.0);
  const SimulationConfig cfg = make_config(d, Scheme::MetricSandwich, 1.0, ComplexVector::Unit(2, 0));
  for (auto _ : state) benchmark::DoNotOptimize(run_simulation(cfg));
}
BENCHMARK(BM_RunSimulation);

void BM_NoSignalingSimulated(benchmark::State& state) {
  ExperimentConfig cfg;
  cfg.alpha = 0.785;
  cfg.mode = ChannelMode::Simulated;
  for (auto _ : state) benchmark::DoNotOptimize(run_experiment(cfg));
}
BENCHMARK(BM_NoSignalingSimulated);

void BM_ObstructionDemo(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(scalar_sum_obstruction_demo());
}
BENCHMARK(BM_ObstructionDemo)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
