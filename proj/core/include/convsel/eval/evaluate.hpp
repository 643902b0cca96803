#pragma once

#include <array>
#include <string>
#include <vector>

#include "convsel/bench/timing.hpp"
#include "convsel/eval/network.hpp"
#include "convsel/eval/timing_source.hpp"
#include "convsel/learn/model_io.hpp"
#include "convsel/tensor.hpp"

namespace convsel {

/// Best available method for one layer: the argmin over Ok timings, ties
/// to the lowest method code. The same rule labels dataset records, so an
/// oracle choice always agrees with a record's label. Throws
/// AllMethodsFailed.
ConvMethod oracle_choice(const MethodTimings& timings);

/// One layer of an evaluation run. `predicted` is the model's raw output;
/// `effective` is what dispatch would actually run: the prediction, or the
/// gemm fallback when the predicted method cannot run the layer (then
/// predicted_failed is set and the layer is charged gemm's time).
struct LayerOutcome {
  LayerShape shape;
  ConvMethod predicted = ConvMethod::Gemm;
  ConvMethod effective = ConvMethod::Gemm;
  ConvMethod oracle = ConvMethod::Gemm;
  MethodTimings timings{};
  double predicted_time = 0.0;
  double oracle_time = 0.0;
  bool predicted_failed = false;
};

struct MethodTotal {
  double total_us = 0.0;
  int layers_completed = 0;
};

struct NetworkReport {
  std::string network_name;
  std::string model_kind;
  int layer_count = 0;
  std::vector<LayerOutcome> layers;
  /// Per static method: summed time over the layers it completed.
  std::array<MethodTotal, kMethodCount> static_totals;
  double total_predicted = 0.0;
  double total_oracle = 0.0;
  /// How many layers each method got, counted over effective selections
  /// (model) and oracle choices; each triple sums to layer_count.
  std::array<int, kMethodCount> model_selection{};
  std::array<int, kMethodCount> oracle_selection{};
  /// Fraction of layers whose effective method equals the oracle's.
  double accuracy = 0.0;
};

/// Predicts per layer, pulls all three timings from the source, and
/// aggregates. Throws MissingShape (ranking source without the layer) and
/// AllMethodsFailed (a layer no method completes).
NetworkReport evaluate_network(const ClassifierModel& model, const NetworkSpec& network,
                               TimingSource& source);

/// Same evaluation with the oracle itself as the predictor: accuracy 1.0
/// and total_predicted equal to total_oracle by construction.
NetworkReport evaluate_network_oracle(const NetworkSpec& network, TimingSource& source);

struct DispatchLog {
  struct Entry {
    LayerShape shape;
    ConvMethod predicted;
    ConvMethod executed;
    bool fell_back;
  };
  std::vector<Entry> entries;
};

/// Runs the backend the model picks for the shape. When that backend
/// cannot run the layer it falls back to gemm, which handles every valid
/// shape; the attempt is recorded in the log either way. Model quality
/// therefore costs time, never correctness.
Tensor dispatch_convolve(const ClassifierModel& model, const Tensor& input,
                         const Tensor& kernels, const LayerShape& shape,
                         DispatchLog* log = nullptr);

/// Writes summary.txt (key: value lines; accuracy_pct, then one
/// speedup_vs_* line per static method, where a method that completed
/// fewer layers than the network has gets "<method>: failed" instead) and
/// plot.csv (header column,total_us,layers_completed,sel_gemm,sel_direct,
/// sel_winograd; exactly five rows: gemm, direct, winograd, model,
/// oracle). Byte-stable for equal reports. Throws IoError.
void emit_report(const NetworkReport& report, const std::string& out_dir);

}  // namespace convsel
