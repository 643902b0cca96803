#include "convsel/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "convsel/errors.hpp"

namespace convsel {

namespace {

std::size_t checked_element_count(const std::vector<int>& dims) {
  if (dims.empty()) {
    throw DimensionMismatch("tensor must have at least one axis");
  }
  std::size_t count = 1;
  for (int d : dims) {
    if (d < 1) {
      throw DimensionMismatch("tensor axis size must be >= 1, got " + std::to_string(d));
    }
    count *= static_cast<std::size_t>(d);
  }
  return count;
}

}  // namespace

Tensor::Tensor(std::vector<int> dims)
    : dims_(std::move(dims)), data_(checked_element_count(dims_), 0.0f) {}

Tensor::Tensor(std::vector<int> dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
  const std::size_t expected = checked_element_count(dims_);
  if (data_.size() != expected) {
    throw DimensionMismatch("tensor data length " + std::to_string(data_.size()) +
                            " does not match dims product " + std::to_string(expected));
  }
}

float max_abs(const Tensor& t) noexcept {
  float m = 0.0f;
  for (float v : t.values()) m = std::max(m, std::fabs(v));
  return m;
}

float max_relative_difference(const Tensor& a, const Tensor& b) {
  if (!a.same_dims(b)) {
    throw DimensionMismatch("tensors differ in shape");
  }
  const float scale = std::max({max_abs(a), max_abs(b), 1e-6f});
  float worst = 0.0f;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::fabs(a[i] - b[i]) / scale);
  }
  return worst;
}

}  // namespace convsel
