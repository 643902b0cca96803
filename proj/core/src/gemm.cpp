#include "convsel/matrix.hpp"

#include <algorithm>
#include <string>

#include "convsel/errors.hpp"

namespace convsel {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1) {
    throw DimensionMismatch("matrix extents must be >= 1");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0f);
}

Matrix::Matrix(int rows, int cols, std::vector<float> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows < 1 || cols < 1) {
    throw DimensionMismatch("matrix extents must be >= 1");
  }
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionMismatch("matrix data length does not match extents");
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0f;
  return m;
}

namespace {

// Tile sizes chosen so an A tile plus a B stripe stay L1/L2 resident.
constexpr int kBlockRows = 64;
constexpr int kBlockInner = 256;
constexpr int kBlockCols = 512;

}  // namespace

Matrix gemm(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionMismatch("gemm inner dimensions disagree: " + std::to_string(a.cols()) +
                            " vs " + std::to_string(b.rows()));
  }
  const int m = a.rows();
  const int k = a.cols();
  const int n = b.cols();
  Matrix c(m, n);

  // k advances in ascending order inside each (i, j) accumulator, so the
  // result is bit-identical to the unblocked triple loop.
  for (int i0 = 0; i0 < m; i0 += kBlockRows) {
    const int i1 = std::min(i0 + kBlockRows, m);
    for (int k0 = 0; k0 < k; k0 += kBlockInner) {
      const int k1 = std::min(k0 + kBlockInner, k);
      for (int j0 = 0; j0 < n; j0 += kBlockCols) {
        const int j1 = std::min(j0 + kBlockCols, n);
        for (int i = i0; i < i1; ++i) {
          const float* arow = a.row(i);
          float* crow = c.row(i);
          for (int t = k0; t < k1; ++t) {
            const float atk = arow[t];
            const float* brow = b.row(t);
            for (int j = j0; j < j1; ++j) {
              crow[j] += atk * brow[j];
            }
          }
        }
      }
    }
  }
  return c;
}

}  // namespace convsel
