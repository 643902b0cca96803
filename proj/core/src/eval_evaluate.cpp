#include "convsel/eval/evaluate.hpp"

#include <filesystem>
#include <fstream>
#include <functional>

#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/text.hpp"

namespace convsel {

ConvMethod oracle_choice(const MethodTimings& timings) { return fastest_ok(timings); }

namespace {

using Predictor = std::function<ConvMethod(const LayerShape&, const MethodTimings&)>;

NetworkReport evaluate_with(const Predictor& predictor, const NetworkSpec& network,
                            TimingSource& source, std::string model_kind) {
  NetworkReport report;
  report.network_name = network.name;
  report.model_kind = std::move(model_kind);
  report.layer_count = static_cast<int>(network.layers.size());
  report.layers.reserve(network.layers.size());

  int agreement = 0;
  for (const LayerShape& shape : network.layers) {
    LayerOutcome outcome{shape};
    outcome.timings = source.timings(shape);
    outcome.oracle = oracle_choice(outcome.timings);
    outcome.oracle_time = outcome.timings[method_code(outcome.oracle)].micros;
    outcome.predicted = predictor(shape, outcome.timings);

    if (outcome.timings[method_code(outcome.predicted)].status == RunStatus::Ok) {
      outcome.effective = outcome.predicted;
    } else {
      // Dispatch falls back to gemm. A source may mark even gemm as failed
      // on some layer; the oracle method is charged then so totals stay
      // well-defined.
      outcome.predicted_failed = true;
      outcome.effective =
          outcome.timings[method_code(ConvMethod::Gemm)].status == RunStatus::Ok
              ? ConvMethod::Gemm
              : outcome.oracle;
    }
    outcome.predicted_time = outcome.timings[method_code(outcome.effective)].micros;

    for (ConvMethod m : kAllMethods) {
      const TimingResult& t = outcome.timings[method_code(m)];
      if (t.status == RunStatus::Ok) {
        report.static_totals[method_code(m)].total_us += t.micros;
        report.static_totals[method_code(m)].layers_completed += 1;
      }
    }
    report.total_predicted += outcome.predicted_time;
    report.total_oracle += outcome.oracle_time;
    ++report.model_selection[method_code(outcome.effective)];
    ++report.oracle_selection[method_code(outcome.oracle)];
    agreement += outcome.effective == outcome.oracle ? 1 : 0;
    report.layers.push_back(std::move(outcome));
  }
  report.accuracy = static_cast<double>(agreement) / static_cast<double>(report.layer_count);
  return report;
}

std::string_view model_kind_name(const ClassifierModel& model) {
  return std::holds_alternative<DecisionTreeModel>(model) ? "dt" : "nb";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open for writing: " + path);
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace

NetworkReport evaluate_network(const ClassifierModel& model, const NetworkSpec& network,
                               TimingSource& source) {
  return evaluate_with(
      [&model](const LayerShape& shape, const MethodTimings&) {
        return predict(model, shape.features());
      },
      network, source, std::string(model_kind_name(model)));
}

NetworkReport evaluate_network_oracle(const NetworkSpec& network, TimingSource& source) {
  return evaluate_with(
      [](const LayerShape&, const MethodTimings& timings) { return oracle_choice(timings); },
      network, source, "oracle");
}

Tensor dispatch_convolve(const ClassifierModel& model, const Tensor& input,
                         const Tensor& kernels, const LayerShape& shape, DispatchLog* log) {
  const ConvMethod predicted = predict(model, shape.features());
  try {
    Tensor out = convolve(predicted, input, kernels, shape);
    if (log) {
      log->entries.push_back(DispatchLog::Entry{shape, predicted, predicted, false});
    }
    return out;
  } catch (const UnsupportedShape&) {
    Tensor out = convolve(ConvMethod::Gemm, input, kernels, shape);
    if (log) {
      log->entries.push_back(DispatchLog::Entry{shape, predicted, ConvMethod::Gemm, true});
    }
    return out;
  }
}

void emit_report(const NetworkReport& report, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw IoError("cannot create directory " + out_dir + ": " + ec.message());
  }
  const std::string base = out_dir.empty() || out_dir.back() == '/' ? out_dir : out_dir + "/";

  std::string plot;
  plot += "column,total_us,layers_completed,sel_gemm,sel_direct,sel_winograd\n";
  for (ConvMethod m : kAllMethods) {
    const MethodTotal& t = report.static_totals[method_code(m)];
    plot += std::string(method_name(m)) + ',' + format_double(t.total_us) + ',' +
            std::to_string(t.layers_completed);
    // A static row assigns every layer to its own method.
    for (ConvMethod slot : kAllMethods) {
      plot += ',';
      plot += slot == m ? std::to_string(report.layer_count) : "0";
    }
    plot += '\n';
  }
  const auto selection_fields = [](const std::array<int, kMethodCount>& sel) {
    return ',' + std::to_string(sel[0]) + ',' + std::to_string(sel[1]) + ',' +
           std::to_string(sel[2]);
  };
  plot += "model," + format_double(report.total_predicted) + ',' +
          std::to_string(report.layer_count) + selection_fields(report.model_selection) +
          '\n';
  plot += "oracle," + format_double(report.total_oracle) + ',' +
          std::to_string(report.layer_count) + selection_fields(report.oracle_selection) +
          '\n';
  write_file(base + "plot.csv", plot);

  std::string summary;
  summary += "network: " + report.network_name + '\n';
  summary += "model: " + report.model_kind + '\n';
  summary += "layers: " + std::to_string(report.layer_count) + '\n';
  summary += "accuracy_pct: " + format_fixed(100.0 * report.accuracy, 2) + '\n';
  for (ConvMethod m : kAllMethods) {
    const MethodTotal& t = report.static_totals[method_code(m)];
    if (t.layers_completed == report.layer_count) {
      summary += "speedup_vs_" + std::string(method_name(m)) + ": " +
                 format_fixed(t.total_us / report.total_predicted, 2) + "X\n";
    } else {
      summary += std::string(method_name(m)) + ": failed\n";
    }
  }
  write_file(base + "summary.txt", summary);
}

}  // namespace convsel
