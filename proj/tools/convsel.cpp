// convsel: dataset generation, classifier training, and model evaluation
// for convolution method selection, plus ad-hoc convolution runs.
//
// Exit codes: 0 success, 1 usage error, 2 malformed or missing input data,
// 3 runtime failure.

#include <array>
#include <chrono>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "convsel/bench/dataset.hpp"
#include "convsel/bench/grid.hpp"
#include "convsel/bench/measure.hpp"
#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/eval/evaluate.hpp"
#include "convsel/eval/network.hpp"
#include "convsel/learn/dataset.hpp"
#include "convsel/learn/metrics.hpp"
#include "convsel/learn/model_io.hpp"
#include "convsel/rng.hpp"
#include "convsel/tensor.hpp"
#include "convsel/text.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitRuntime = 3;

struct GenerateArgs {
  std::string out_dir;
  bool synthetic = false;
  std::string grid_file;
  int reps = 0;     // 0: keep the grid config value
  int warmups = -1;  // negative: keep the grid config value
  double max_flops = 2e8;
};

struct TrainArgs {
  std::string dataset;
  std::string model_out;
  std::string kind;
  int max_depth = 12;
  int min_samples_split = 2;
  double holdout = 0.0;
  bool prune = false;
};

struct EvaluateArgs {
  std::string model_file;
  std::string network_file;
  std::string timing = "synthetic";
  std::string out_dir;
  int reps = 5;
  int warmups = 1;
};

struct ConvolveArgs {
  int width = 0;
  int height = 0;
  int in_channels = 0;
  int kernel = 0;
  int out_channels = 0;
  std::string method = "gemm";
  std::string model_file;
};

convsel::GridConfig resolve_grid(const std::string& grid_file) {
  return grid_file.empty() ? convsel::GridConfig::defaults()
                           : convsel::load_grid_file(grid_file);
}

void print_train_report(const convsel::TrainReport& report, std::ostream& out) {
  out << "samples: " << report.total << "\n";
  out << "accuracy_pct: " << convsel::format_fixed(100.0 * report.training_accuracy, 2)
      << "\n";
  if (report.holdout_accuracy) {
    out << "holdout_accuracy_pct: "
        << convsel::format_fixed(100.0 * *report.holdout_accuracy, 2) << "\n";
  }
  out << "confusion (rows actual, columns predicted; order gemm,direct,winograd):\n";
  for (int a = 0; a < convsel::kMethodCount; ++a) {
    out << " ";
    for (int p = 0; p < convsel::kMethodCount; ++p) {
      out << " " << report.confusion[a][p];
    }
    out << "\n";
  }
  for (convsel::ConvMethod m : convsel::kAllMethods) {
    const int c = convsel::method_code(m);
    out << convsel::method_name(m)
        << ": precision " << convsel::format_fixed(report.precision[c], 4) << ", recall "
        << convsel::format_fixed(report.recall[c], 4) << "\n";
  }
}

int run_generate(const GenerateArgs& args, std::uint64_t seed) {
  convsel::GridConfig config = resolve_grid(args.grid_file);
  if (args.reps > 0) {
    config.repetitions = args.reps;
  }
  if (args.warmups >= 0) {
    config.warmups = args.warmups;
  }

  std::error_code ec;
  std::filesystem::create_directories(args.out_dir, ec);
  if (ec) {
    throw convsel::IoError("cannot create directory " + args.out_dir + ": " + ec.message());
  }

  const std::vector<convsel::LayerShape> shapes = convsel::generate_shape_grid(config);

  convsel::SweepOptions options;
  options.synthetic = args.synthetic;
  options.max_flops = args.max_flops;
  options.measure = convsel::MeasureOptions{config.repetitions, config.warmups, seed};
  options.log = [](const std::string& line) { std::cerr << line << "\n"; };

  const std::vector<convsel::BenchmarkRecord> records = convsel::run_sweep(shapes, options);
  const convsel::DatasetPaths paths = convsel::DatasetPaths::in_dir(args.out_dir);
  convsel::write_dataset(records, paths);

  std::array<std::size_t, convsel::kMethodCount> label_counts{};
  for (const convsel::BenchmarkRecord& r : records) {
    ++label_counts[convsel::method_code(r.label)];
  }
  std::cout << "shapes: " << shapes.size() << "\n";
  std::cout << "records: " << records.size() << "\n";
  for (convsel::ConvMethod m : convsel::kAllMethods) {
    std::cout << "label_" << convsel::method_name(m) << ": "
              << label_counts[convsel::method_code(m)] << "\n";
  }
  std::cout << "features: " << paths.features_csv << "\n";
  std::cout << "arff: " << paths.arff << "\n";
  std::cout << "ranking: " << paths.ranking_csv << "\n";
  return kExitOk;
}

int run_train(const TrainArgs& args, std::uint64_t seed) {
  const std::vector<convsel::LabeledSample> all = convsel::read_labeled_samples(args.dataset);

  std::vector<convsel::LabeledSample> train = all;
  std::vector<convsel::LabeledSample> holdout;
  if (args.holdout > 0.0) {
    std::tie(train, holdout) = convsel::split_dataset(all, args.holdout, seed);
  }
  if (train.empty()) {
    throw convsel::EmptyDataset("the holdout split left no training samples");
  }

  convsel::ClassifierModel model = [&]() -> convsel::ClassifierModel {
    if (args.kind == "dt") {
      convsel::DecisionTreeParams params;
      params.max_depth = args.max_depth;
      params.min_samples_split = args.min_samples_split;
      auto tree = convsel::DecisionTreeModel::train(train, params);
      if (args.prune) {
        tree.prune_reduced_error(holdout);
      }
      return tree;
    }
    return convsel::NaiveBayesModel::train(train);
  }();

  convsel::save_model(model, args.model_out);

  convsel::TrainReport report = convsel::evaluate_accuracy(model, train);
  if (!holdout.empty()) {
    report.holdout_accuracy = convsel::evaluate_accuracy(model, holdout).training_accuracy;
  }
  std::cout << "kind: " << args.kind << "\n";
  print_train_report(report, std::cout);
  std::cout << "model: " << args.model_out << "\n";
  return kExitOk;
}

int run_evaluate(const EvaluateArgs& args, std::uint64_t seed) {
  const convsel::ClassifierModel model = convsel::load_model(args.model_file);
  const convsel::NetworkSpec network = convsel::read_network_csv(args.network_file);

  std::unique_ptr<convsel::TimingSource> source;
  if (args.timing == "synthetic") {
    source = std::make_unique<convsel::SyntheticTimingSource>();
  } else if (args.timing == "measured") {
    source = std::make_unique<convsel::MeasuredTimingSource>(
        convsel::MeasureOptions{args.reps, args.warmups, seed});
  } else if (args.timing.rfind("ranking:", 0) == 0) {
    source = std::make_unique<convsel::RankingFileTimingSource>(
        args.timing.substr(std::string("ranking:").size()));
  } else {
    // Unreachable: the flag is validated by the parser.
    throw convsel::Error("unknown timing source: " + args.timing);
  }

  const convsel::NetworkReport report = convsel::evaluate_network(model, network, *source);
  convsel::emit_report(report, args.out_dir);

  std::cout << "network: " << report.network_name << "\n";
  std::cout << "layers: " << report.layer_count << "\n";
  std::cout << "accuracy_pct: " << convsel::format_fixed(100.0 * report.accuracy, 2) << "\n";
  std::cout << "total_model_us: " << convsel::format_double(report.total_predicted) << "\n";
  std::cout << "total_oracle_us: " << convsel::format_double(report.total_oracle) << "\n";
  std::cout << "report: " << args.out_dir << "\n";
  return kExitOk;
}

int run_convolve(const ConvolveArgs& args, std::uint64_t seed) {
  const convsel::LayerShape shape(args.width, args.height, args.in_channels, args.kernel,
                                  args.out_channels);
  convsel::Tensor input({shape.in_channels(), shape.height(), shape.width()});
  convsel::Tensor kernels({shape.out_channels(), shape.in_channels(), shape.kernel_size(),
                           shape.kernel_size()});
  convsel::fill_uniform(input.values(), convsel::mix_seed(seed, 1), -1.0f, 1.0f);
  convsel::fill_uniform(kernels.values(), convsel::mix_seed(seed, 2), -1.0f, 1.0f);

  const auto t0 = std::chrono::steady_clock::now();
  convsel::Tensor out({1});
  std::string executed;
  if (!args.model_file.empty()) {
    const convsel::ClassifierModel model = convsel::load_model(args.model_file);
    convsel::DispatchLog log;
    out = convsel::dispatch_convolve(model, input, kernels, shape, &log);
    const convsel::DispatchLog::Entry& entry = log.entries.front();
    executed = convsel::method_name(entry.executed);
    std::cout << "predicted: " << convsel::method_name(entry.predicted) << "\n";
    if (entry.fell_back) {
      std::cout << "fallback: the predicted method cannot run this shape\n";
    }
  } else {
    const auto method = convsel::method_from_name(args.method);
    out = convsel::convolve(*method, input, kernels, shape);
    executed = args.method;
  }
  const auto t1 = std::chrono::steady_clock::now();

  double sum = 0.0;
  for (float v : out.values()) {
    sum += v;
  }
  std::cout << "shape: " << shape.to_string() << "\n";
  std::cout << "executed: " << executed << "\n";
  std::cout << "output_dims: " << out.dim(0) << "x" << out.dim(1) << "x" << out.dim(2)
            << "\n";
  std::cout << "output_sum: " << convsel::format_double(sum) << "\n";
  std::cout << "micros: "
            << convsel::format_double(
                   std::chrono::duration<double, std::micro>(t1 - t0).count())
            << "\n";
  return kExitOk;
}

int run_grid_info(const std::string& grid_file) {
  const convsel::GridConfig config = resolve_grid(grid_file);
  const std::vector<convsel::LayerShape> shapes = convsel::generate_shape_grid(config);
  std::cout << "W,H,C_IN,KERNEL_SIZE,C_OUT\n";
  for (const convsel::LayerShape& s : shapes) {
    std::cout << s.width() << ',' << s.height() << ',' << s.in_channels() << ','
              << s.kernel_size() << ',' << s.out_channels() << "\n";
  }
  std::cerr << "grid size: " << shapes.size() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution method selection: benchmark, train, dispatch"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 42;
  app.add_option("--seed", seed, "Seed for every pseudo-random choice")
      ->capture_default_str();

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate-dataset", "Sweep the shape grid and write the dataset files");
  generate->add_option("--out", gen.out_dir, "Output directory")->required();
  generate->add_flag("--synthetic", gen.synthetic,
                     "Use the deterministic cost model instead of wall-clock timing");
  generate->add_option("--grid", gen.grid_file, "Grid override file");
  generate->add_option("--reps", gen.reps, "Timing repetitions per shape")
      ->check(CLI::PositiveNumber);
  generate->add_option("--warmups", gen.warmups, "Discarded warmup runs per shape")
      ->check(CLI::NonNegativeNumber);
  generate->add_option("--max-flops", gen.max_flops,
                       "Skip shapes above this multiply-accumulate budget in measured "
                       "mode; 0 disables the cap")
      ->capture_default_str();

  TrainArgs tr;
  CLI::App* train = app.add_subcommand("train", "Train a classifier on a dataset file");
  train->add_option("--dataset", tr.dataset, "features CSV or ARFF file")->required();
  train->add_option("--model-out", tr.model_out, "Where to write the model")->required();
  train->add_option("--kind", tr.kind, "Classifier kind")
      ->required()
      ->check(CLI::IsMember({"dt", "nb"}));
  train->add_option("--max-depth", tr.max_depth,
                    "Decision tree depth cap; 0 means unlimited")
      ->capture_default_str();
  train->add_option("--min-samples-split", tr.min_samples_split,
                    "Smallest node a decision tree may split")
      ->capture_default_str();
  train->add_option("--holdout", tr.holdout,
                    "Fraction of samples held out for validation")
      ->check(CLI::Range(0.0, 0.999999));
  train->add_flag("--prune", tr.prune,
                  "Reduced-error pruning against the holdout set (dt only)");

  EvaluateArgs ev;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Replay a network through a trained model");
  evaluate->add_option("--model", ev.model_file, "Trained model file")->required();
  evaluate->add_option("--network", ev.network_file, "Network layer CSV")->required();
  evaluate
      ->add_option("--timing", ev.timing,
                   "Timing source: measured, synthetic, or ranking:FILE")
      ->capture_default_str()
      ->check([](const std::string& v) -> std::string {
        if (v == "measured" || v == "synthetic" || v.rfind("ranking:", 0) == 0) {
          return {};
        }
        return "must be measured, synthetic, or ranking:FILE";
      });
  evaluate->add_option("--out", ev.out_dir, "Report directory")->required();
  evaluate->add_option("--reps", ev.reps, "Timing repetitions (measured only)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate->add_option("--warmups", ev.warmups, "Warmup runs (measured only)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  ConvolveArgs cv;
  CLI::App* convolve = app.add_subcommand("convolve", "Run one convolution");
  convolve->add_option("--width", cv.width)->required()->check(CLI::PositiveNumber);
  convolve->add_option("--height", cv.height)->required()->check(CLI::PositiveNumber);
  convolve->add_option("--in-channels", cv.in_channels)
      ->required()
      ->check(CLI::PositiveNumber);
  convolve->add_option("--kernel", cv.kernel)->required()->check(CLI::PositiveNumber);
  convolve->add_option("--out-channels", cv.out_channels)
      ->required()
      ->check(CLI::PositiveNumber);
  CLI::Option* method_opt = convolve->add_option("--method", cv.method, "Backend to run")
                                ->capture_default_str()
                                ->check(CLI::IsMember({"gemm", "direct", "winograd"}));
  convolve->add_option("--model", cv.model_file, "Dispatch through a trained model")
      ->excludes(method_opt);

  std::string grid_info_file;
  CLI::App* grid_info =
      app.add_subcommand("grid-info", "Print the resolved shape grid and its size");
  grid_info->add_option("--grid", grid_info_file, "Grid override file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (generate->parsed()) {
      return run_generate(gen, seed);
    }
    if (train->parsed()) {
      return run_train(tr, seed);
    }
    if (evaluate->parsed()) {
      return run_evaluate(ev, seed);
    }
    if (convolve->parsed()) {
      return run_convolve(cv, seed);
    }
    return run_grid_info(grid_info_file);
  } catch (const convsel::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::FormatVersionMismatch& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::MissingShape& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::EmptyDataset& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::EmptyGrid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const convsel::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
