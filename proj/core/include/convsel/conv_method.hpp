#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace convsel {

/// The three convolution implementations the selector chooses between.
/// Integer codes are part of the file formats and must not change.
enum class ConvMethod : int {
  Gemm = 0,      // im2col + GEMM
  Direct = 1,    // direct convolution sum
  Winograd = 2,  // F(2x2,3x3) minimal filtering
};

inline constexpr int kMethodCount = 3;

inline constexpr std::array<ConvMethod, kMethodCount> kAllMethods = {
    ConvMethod::Gemm, ConvMethod::Direct, ConvMethod::Winograd};

constexpr int method_code(ConvMethod m) noexcept { return static_cast<int>(m); }

constexpr std::string_view method_name(ConvMethod m) noexcept {
  switch (m) {
    case ConvMethod::Gemm:
      return "gemm";
    case ConvMethod::Direct:
      return "direct";
    case ConvMethod::Winograd:
      return "winograd";
  }
  return "unknown";
}

constexpr std::optional<ConvMethod> method_from_name(std::string_view name) noexcept {
  if (name == "gemm") return ConvMethod::Gemm;
  if (name == "direct") return ConvMethod::Direct;
  if (name == "winograd") return ConvMethod::Winograd;
  return std::nullopt;
}

}  // namespace convsel
