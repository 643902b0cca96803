#include "convsel/bench/measure.hpp"

#include <algorithm>
#include <chrono>
#include <new>
#include <vector>

#include "convsel/bench/synthetic.hpp"
#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/rng.hpp"
#include "convsel/tensor.hpp"

namespace convsel {

namespace {

// Keeps the optimizer from discarding the timed convolutions.
volatile float g_timing_sink = 0.0f;

std::uint64_t shape_seed(const LayerShape& s, std::uint64_t base) {
  std::uint64_t seed = base;
  seed = mix_seed(seed, static_cast<std::uint64_t>(s.width()));
  seed = mix_seed(seed, static_cast<std::uint64_t>(s.height()));
  seed = mix_seed(seed, static_cast<std::uint64_t>(s.in_channels()));
  seed = mix_seed(seed, static_cast<std::uint64_t>(s.kernel_size()));
  seed = mix_seed(seed, static_cast<std::uint64_t>(s.out_channels()));
  return seed;
}

double median(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) {
    return values[n / 2];
  }
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

TimingResult measure_layer(const LayerShape& shape, ConvMethod method,
                           const MeasureOptions& options) {
  if (options.repetitions < 1) {
    throw UnsupportedShape("repetitions must be at least 1");
  }
  try {
    const std::uint64_t seed = shape_seed(shape, options.seed);
    Tensor input({shape.in_channels(), shape.height(), shape.width()});
    Tensor kernels(
        {shape.out_channels(), shape.in_channels(), shape.kernel_size(), shape.kernel_size()});
    fill_uniform(input.values(), mix_seed(seed, 1), -1.0f, 1.0f);
    fill_uniform(kernels.values(), mix_seed(seed, 2), -1.0f, 1.0f);

    for (int i = 0; i < options.warmups; ++i) {
      Tensor out = convolve(method, input, kernels, shape);
      g_timing_sink = g_timing_sink + out[0];
    }
    std::vector<double> micros;
    micros.reserve(static_cast<std::size_t>(options.repetitions));
    for (int i = 0; i < options.repetitions; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      Tensor out = convolve(method, input, kernels, shape);
      const auto t1 = std::chrono::steady_clock::now();
      g_timing_sink = g_timing_sink + out[0];
      micros.push_back(std::chrono::duration<double, std::micro>(t1 - t0).count());
    }
    return TimingResult::ok(method, median(micros));
  } catch (const UnsupportedShape&) {
    return TimingResult::failed(method);
  } catch (const std::bad_alloc&) {
    return TimingResult::failed(method);
  }
}

std::vector<BenchmarkRecord> run_sweep(const std::vector<LayerShape>& shapes,
                                       const SweepOptions& options) {
  std::vector<BenchmarkRecord> records;
  records.reserve(shapes.size());
  for (const LayerShape& shape : shapes) {
    if (options.synthetic) {
      records.push_back(label_record(shape, synthetic_costs(shape)));
      continue;
    }
    if (options.max_flops > 0 && shape.macs() > options.max_flops) {
      if (options.log) {
        options.log("skipped " + shape.to_string() + ": over the flops budget");
      }
      continue;
    }
    MethodTimings timings;
    for (ConvMethod m : kAllMethods) {
      timings[method_code(m)] = measure_layer(shape, m, options.measure);
    }
    const bool any_ok = std::any_of(timings.begin(), timings.end(), [](const TimingResult& t) {
      return t.status == RunStatus::Ok;
    });
    if (!any_ok) {
      if (options.log) {
        options.log("skipped " + shape.to_string() + ": no method can run it");
      }
      continue;
    }
    records.push_back(label_record(shape, timings));
  }
  return records;
}

}  // namespace convsel
