#pragma once

#include <cstddef>
#include <vector>

namespace convsel {

/// Dense fp32 matrix, row-major.
class Matrix {
 public:
  Matrix(int rows, int cols);
  Matrix(int rows, int cols, std::vector<float> data);

  static Matrix identity(int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }

  float at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  float& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

  const float* row(int r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }
  float* row(int r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }

  float* data() noexcept { return data_.data(); }
  const float* data() const noexcept { return data_.data(); }

 private:
  int rows_;
  int cols_;
  std::vector<float> data_;
};

/// C = A * B with cache-blocked loops. Inner dimensions must agree.
/// Accumulation over the inner dimension runs in ascending index order,
/// so results match a naive triple loop exactly.
Matrix gemm(const Matrix& a, const Matrix& b);

}  // namespace convsel
