#include "convsel/bench/synthetic.hpp"

#include <algorithm>
#include <cmath>

namespace convsel {

namespace {

// Frozen coefficients; see the header comment. Changing any of these
// changes dataset labels and therefore classifier behavior.
constexpr double kGemmMacCost = 2.0e-5;
constexpr double kGemmLoweringCost = 1.2e-5;
constexpr double kGemmSetup = 25.0;
constexpr double kDirectMacCost = 5.4e-5;
constexpr double kDirectSetup = 4.0;
constexpr double kWinoMacCost = 2.0e-5;
constexpr double kWinoTransformCost = 4.0e-5;
constexpr double kWinoSetup = 60.0;

}  // namespace

TimingResult synthetic_cost(const LayerShape& shape, ConvMethod method) {
  const double h_out = std::max(0, shape.out_height());
  const double w_out = std::max(0, shape.out_width());
  const double positions = h_out * w_out;
  const double k2 = static_cast<double>(shape.kernel_size()) * shape.kernel_size();
  const double c_in = shape.in_channels();
  const double c_out = shape.out_channels();
  const double macs = c_out * c_in * k2 * positions;

  switch (method) {
    case ConvMethod::Gemm: {
      const double lowering = c_in * k2 * positions;
      return TimingResult::ok(method,
                              kGemmMacCost * macs + kGemmLoweringCost * lowering + kGemmSetup);
    }
    case ConvMethod::Direct:
      return TimingResult::ok(method, kDirectMacCost * macs + kDirectSetup);
    case ConvMethod::Winograd: {
      if (shape.kernel_size() != 3) {
        return TimingResult::failed(method);
      }
      const double tiles_y = (h_out + 1.0) / 2.0;
      const double tiles_x = (w_out + 1.0) / 2.0;
      const double tiles = std::floor(tiles_y) * std::floor(tiles_x);
      const double multiplies = 16.0 * c_out * c_in * tiles;
      const double transforms = 16.0 * tiles * (c_in + c_out) + 16.0 * c_out * c_in;
      return TimingResult::ok(method, kWinoMacCost * multiplies +
                                          kWinoTransformCost * transforms + kWinoSetup);
    }
  }
  return TimingResult::failed(method);
}

MethodTimings synthetic_costs(const LayerShape& shape) {
  MethodTimings timings;
  for (ConvMethod m : kAllMethods) {
    timings[method_code(m)] = synthetic_cost(shape, m);
  }
  return timings;
}

}  // namespace convsel
