#include <benchmark/benchmark.h>

#include <random>

#include "seqmix/entropy.hpp"
#include "seqmix/fit.hpp"
#include "seqmix/hmm.hpp"

using namespace seqmix;

namespace {

// Poisson chain shaped like the count-sequence workloads: J states over
// 1-dimensional counts.
HmmParams count_chain(int num_states, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> gamma_draw(1.0, 1.0);
  HmmParams params;
  params.initial = Vector::Constant(num_states, 1.0 / num_states);
  params.transition.resize(num_states, num_states);
  for (int i = 0; i < num_states; ++i) {
    Vector row(num_states);
    double sum = 0.0;
    for (int j = 0; j < num_states; ++j) {
      row(j) = gamma_draw(rng) + (i == j ? 4.0 : 0.0);  // self-transition heavy
      sum += row(j);
    }
    params.transition.row(i) = row.transpose() / sum;
  }
  Matrix rate(num_states, 1);
  for (int j = 0; j < num_states; ++j) rate(j, 0) = 2.0 + 3.0 * j;
  params.emission = PoissonEmission{rate};
  return params;
}

void BM_ForwardBackward(benchmark::State& state) {
  const int num_states = static_cast<int>(state.range(0));
  const int length = static_cast<int>(state.range(1));
  const HmmParams params = count_chain(num_states, 1);
  const Sequence seq = sample_sequence(params, length, 7).first;
  for (auto _ : state) {
    benchmark::DoNotOptimize(forward_backward(params, seq).log_likelihood);
  }
}
BENCHMARK(BM_ForwardBackward)->Args({3, 808})->Args({6, 903});

void BM_FitIterations(benchmark::State& state) {
  const bool informational = state.range(0) != 0;
  MixtureModel generator;
  generator.mixing = Vector::Constant(2, 0.5);
  generator.components = {count_chain(3, 2), count_chain(3, 3)};
  const SequenceDataset data = sample_mixture(generator, 18, 200, 11);

  FitConfig config;
  config.max_iterations = 5;
  config.rel_tol = 1e-12;  // run all five iterations
  config.strategy = informational ? MStepStrategy::Informational : MStepStrategy::Standard;
  for (auto _ : state) {
    auto [model, report] = fit(data, 2, 3, config);
    benchmark::DoNotOptimize(report.final_log_likelihood);
  }
}
BENCHMARK(BM_FitIterations)->Arg(0)->Arg(1);

void BM_EntropyRate(benchmark::State& state) {
  const HmmParams params = count_chain(static_cast<int>(state.range(0)), 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(entropy_rate(params.transition));
  }
}
BENCHMARK(BM_EntropyRate)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
