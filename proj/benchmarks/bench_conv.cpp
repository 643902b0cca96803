// Microbenchmarks for the three convolution backends over shapes that
// span the regimes where each one tends to win. Args are
// {side, C_IN, K, C_OUT} on a square input.

#include <benchmark/benchmark.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "convsel/conv/backends.hpp"
#include "convsel/layer_shape.hpp"
#include "convsel/rng.hpp"
#include "convsel/tensor.hpp"

namespace {

using namespace convsel;

Tensor random_tensor(std::vector<int> dims, std::uint64_t seed) {
  Tensor t(std::move(dims));
  fill_uniform(t.values(), seed, -1.0f, 1.0f);
  return t;
}

void run_conv(benchmark::State& state, ConvMethod method) {
  const int side = static_cast<int>(state.range(0));
  const int cin = static_cast<int>(state.range(1));
  const int k = static_cast<int>(state.range(2));
  const int cout = static_cast<int>(state.range(3));
  const LayerShape shape(side, side, cin, k, cout);
  const Tensor input = random_tensor({cin, side, side}, 7);
  const Tensor kernels = random_tensor({cout, cin, k, k}, 11);
  for (auto _ : state) {
    Tensor out = convolve(method, input, kernels, shape);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(
      static_cast<std::int64_t>(static_cast<double>(state.iterations()) * shape.macs()));
}

void BM_DirectConv(benchmark::State& state) { run_conv(state, ConvMethod::Direct); }
void BM_GemmConv(benchmark::State& state) { run_conv(state, ConvMethod::Gemm); }
void BM_WinogradConv(benchmark::State& state) { run_conv(state, ConvMethod::Winograd); }

}  // namespace

BENCHMARK(BM_DirectConv)
    ->Args({14, 32, 3, 32})
    ->Args({28, 64, 3, 64})
    ->Args({14, 64, 1, 128})
    ->Args({14, 32, 5, 32})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_GemmConv)
    ->Args({14, 32, 3, 32})
    ->Args({28, 64, 3, 64})
    ->Args({14, 64, 1, 128})
    ->Args({14, 32, 5, 32})
    ->Unit(benchmark::kMicrosecond);

// Winograd only runs 3x3 kernels.
BENCHMARK(BM_WinogradConv)
    ->Args({14, 32, 3, 32})
    ->Args({28, 64, 3, 64})
    ->Args({56, 32, 3, 32})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
