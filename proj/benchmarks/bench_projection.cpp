#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "gproj/gproj.hpp"

using namespace gproj;

namespace {

// Deterministic problem factory: interior basis and an off-submanifold
// target, sized by the benchmark arguments (K, d).
ProjectionProblem make_problem(std::size_t k, std::size_t d, Connection c) {
  std::mt19937_64 rng(k * 1000 + d);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  const auto draw = [&] {
    std::vector<double> p(d);
    for (double& x : p) x = uni(rng);
    return DiscreteDistribution::normalized(std::move(p));
  };
  std::vector<DiscreteDistribution> members;
  for (std::size_t i = 0; i < k; ++i) members.push_back(draw());
  return ProjectionProblem{draw(), BasisSet(std::move(members)), c};
}

void bm_gamma_vector(benchmark::State& state) {
  const auto problem = make_problem(static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(1)),
                                    Connection::EAsNabla);
  const auto w = WeightVector::uniform(problem.basis.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(gamma_vector(problem, w));
  }
}
BENCHMARK(bm_gamma_vector)->Args({2, 8})->Args({4, 32})->Args({8, 256});

void bm_step_A(benchmark::State& state) {
  const auto problem = make_problem(static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(1)),
                                    Connection::EAsNabla);
  const auto w = WeightVector::uniform(problem.basis.size());
  const LearningFunction lf(1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step_A(problem, w, lf));
  }
}
BENCHMARK(bm_step_A)->Args({2, 8})->Args({4, 32})->Args({8, 256});

void bm_run_A(benchmark::State& state) {
  const auto problem = make_problem(static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(1)),
                                    Connection::EAsNabla);
  RunConfig config;
  config.learning = LearningFunction(recommended_beta(problem));
  config.tol_gamma = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_A(problem, config));
  }
}
BENCHMARK(bm_run_A)->Args({2, 8})->Args({4, 32});

void bm_e_mixture(benchmark::State& state) {
  const auto problem = make_problem(static_cast<std::size_t>(state.range(0)),
                                    static_cast<std::size_t>(state.range(1)),
                                    Connection::MAsNabla);
  const auto w = WeightVector::uniform(problem.basis.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(e_mixture(problem.basis, w));
  }
}
BENCHMARK(bm_e_mixture)->Args({4, 32})->Args({8, 256});

void bm_oracle_k2(benchmark::State& state) {
  const auto problem = make_problem(2, static_cast<std::size_t>(state.range(0)),
                                    Connection::EAsNabla);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle_k2(problem));
  }
}
BENCHMARK(bm_oracle_k2)->Arg(8)->Arg(64);

void bm_nmf_small(benchmark::State& state) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(0.05, 1.0);
  std::vector<double> data(8 * 12);
  for (double& x : data) x = uni(rng);
  const NonnegativeMatrix x(8, 12, std::move(data));
  NmfConfig config;
  config.max_sweeps = 10;
  config.run.tol_gamma = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nmf(column_normalize(x), 3, config));
  }
}
BENCHMARK(bm_nmf_small);

}  // namespace

BENCHMARK_MAIN();
