#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace convsel {

/// Dense multi-dimensional fp32 array, row-major.
///
/// Images are stored as [channels, height, width] and kernel banks as
/// [out_channels, in_channels, k, k]. The flat data length always equals
/// the product of the dims; every dim is at least 1.
class Tensor {
 public:
  /// Zero-filled tensor.
  explicit Tensor(std::vector<int> dims);
  Tensor(std::vector<int> dims, std::vector<float> data);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int dim(std::size_t axis) const { return dims_.at(axis); }
  std::size_t rank() const noexcept { return dims_.size(); }
  std::size_t size() const noexcept { return data_.size(); }

  std::span<float> values() noexcept { return data_; }
  std::span<const float> values() const noexcept { return data_; }
  float* data() noexcept { return data_.data(); }
  const float* data() const noexcept { return data_.data(); }

  float operator[](std::size_t i) const { return data_[i]; }
  float& operator[](std::size_t i) { return data_[i]; }

  bool same_dims(const Tensor& other) const noexcept { return dims_ == other.dims_; }

 private:
  std::vector<int> dims_;
  std::vector<float> data_;
};

/// Largest absolute entry; 0 for an all-zero tensor.
float max_abs(const Tensor& t) noexcept;

/// max_i |a_i - b_i| / max(max_abs(a), max_abs(b), floor) with floor 1e-6.
/// Throws DimensionMismatch when dims differ.
float max_relative_difference(const Tensor& a, const Tensor& b);

}  // namespace convsel
