// Throughput of the blocked GEMM kernel and of the im2col lowering that
// feeds it. GEMM args are {M, K, N}; the skinny case mirrors an im2col
// product for a 3x3 layer (rows C_IN*9, columns H_out*W_out).

#include <benchmark/benchmark.h>

#include <cstdint>
#include <span>

#include "convsel/conv/backends.hpp"
#include "convsel/layer_shape.hpp"
#include "convsel/matrix.hpp"
#include "convsel/rng.hpp"
#include "convsel/tensor.hpp"

namespace {

using namespace convsel;

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  Matrix m(rows, cols);
  fill_uniform(std::span<float>(m.data(), m.size()), seed, -1.0f, 1.0f);
  return m;
}

void BM_Gemm(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const int n = static_cast<int>(state.range(2));
  const Matrix a = random_matrix(m, k, 3);
  const Matrix b = random_matrix(k, n, 5);
  for (auto _ : state) {
    Matrix c = gemm(a, b);
    benchmark::DoNotOptimize(c.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m) * k * n);
}

void BM_Im2col(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const int cin = static_cast<int>(state.range(1));
  const LayerShape shape(side, side, cin, 3, 1);
  Tensor input({cin, side, side});
  fill_uniform(input.values(), 9, -1.0f, 1.0f);
  for (auto _ : state) {
    Matrix m = im2col(input, shape);
    benchmark::DoNotOptimize(m.data());
  }
}

}  // namespace

BENCHMARK(BM_Gemm)
    ->Args({64, 64, 64})
    ->Args({256, 256, 256})
    ->Args({512, 512, 512})
    ->Args({64, 288, 784})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK(BM_Im2col)
    ->Args({14, 64})
    ->Args({28, 128})
    ->Args({56, 64})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
