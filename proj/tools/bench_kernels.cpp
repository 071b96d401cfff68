// Serial vs OpenMP kernel comparison. Run with --benchmark_filter to focus.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "expsum/kernels.hpp"
#include "expsum/winding.hpp"

namespace {

using expsum::Complex;
using expsum::ExpSum;
using expsum::ScaledEval;

ExpSum bench_sum() {
  std::vector<expsum::ExpTerm> terms{{{1.0, 0.0}, 0.0}, {{0.7, 0.4}, 0.9},
                                     {{-1.3, 0.2}, 1.7}, {{0.5, -0.8}, 2.6},
                                     {{1.1, 0.1}, 3.8},  {{-0.2, 0.9}, 4.7}};
  return ExpSum(std::move(terms));
}

std::vector<Complex> bench_points(std::size_t n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-30.0, 30.0), im(-100.0, 100.0);
  std::vector<Complex> pts(n);
  for (auto& p : pts) p = {re(rng), im(rng)};
  return pts;
}

void BM_eval_scaled_serial(benchmark::State& state) {
  const auto f = bench_sum();
  const auto pts = bench_points(static_cast<std::size_t>(state.range(0)));
  std::vector<ScaledEval> out(pts.size());
  for (auto _ : state) {
    expsum::kernels::eval_scaled_batch_serial(f, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_eval_scaled_parallel(benchmark::State& state) {
  const auto f = bench_sum();
  const auto pts = bench_points(static_cast<std::size_t>(state.range(0)));
  std::vector<ScaledEval> out(pts.size());
  for (auto _ : state) {
    expsum::kernels::eval_scaled_batch_parallel(f, pts, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_circle_serial(benchmark::State& state) {
  const auto f = bench_sum();
  std::vector<double> thetas(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < thetas.size(); ++i)
    thetas[i] = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(thetas.size());
  std::vector<double> out(thetas.size());
  for (auto _ : state) {
    expsum::kernels::circle_logmod_serial(f, {1.0, 2.0}, 15.0, thetas, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_circle_parallel(benchmark::State& state) {
  const auto f = bench_sum();
  std::vector<double> thetas(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < thetas.size(); ++i)
    thetas[i] = 6.283185307179586 * static_cast<double>(i) / static_cast<double>(thetas.size());
  std::vector<double> out(thetas.size());
  for (auto _ : state) {
    expsum::kernels::circle_logmod_parallel(f, {1.0, 2.0}, 15.0, thetas, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_count_zeros(benchmark::State& state) {
  const auto f = bench_sum();
  const expsum::Rectangle rect{-3.0, 3.0, 0.0, static_cast<double>(state.range(0))};
  for (auto _ : state) {
    auto r = expsum::count_zeros(f, rect);
    benchmark::DoNotOptimize(r.count);
  }
}

}  // namespace

BENCHMARK(BM_eval_scaled_serial)->Arg(4096)->Arg(65536);
BENCHMARK(BM_eval_scaled_parallel)->Arg(4096)->Arg(65536);
BENCHMARK(BM_circle_serial)->Arg(4096)->Arg(32768);
BENCHMARK(BM_circle_parallel)->Arg(4096)->Arg(32768);
BENCHMARK(BM_count_zeros)->Arg(50)->Arg(400);

BENCHMARK_MAIN();
