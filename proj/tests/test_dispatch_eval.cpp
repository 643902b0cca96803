#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "convsel/bench/grid.hpp"
#include "convsel/bench/synthetic.hpp"
#include "convsel/conv/backends.hpp"
#include "convsel/errors.hpp"
#include "convsel/eval/evaluate.hpp"
#include "convsel/eval/network.hpp"
#include "convsel/eval/timing_source.hpp"
#include "convsel/learn/decision_tree.hpp"
#include "convsel/learn/model_io.hpp"
#include "convsel/rng.hpp"
#include "test_util.hpp"

using namespace convsel;
namespace fs = std::filesystem;
using testutil::first_mismatch;
using testutil::random_tensor;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::path(CONVSEL_SCRATCH) / "eval";
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// A tree that answers the same method for every input.
ClassifierModel constant_model(ConvMethod label) {
  TreeNode leaf;
  leaf.class_label = label;
  leaf.class_counts[method_code(label)] = 1;
  return DecisionTreeModel({leaf}, DecisionTreeParams{});
}

NetworkSpec tiny_network() {
  return NetworkSpec{"tiny",
                     {LayerShape(7, 7, 512, 3, 512), LayerShape(7, 7, 3, 1, 8),
                      LayerShape(7, 7, 2048, 5, 1024), LayerShape(7, 7, 3, 11, 8)}};
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("oracle_choice agrees with dataset labeling on grid shapes") {
  const std::vector<LayerShape> grid = generate_shape_grid(GridConfig::defaults());
  for (std::size_t i = 0; i < grid.size(); i += 37) {
    const MethodTimings timings = synthetic_costs(grid[i]);
    CHECK(oracle_choice(timings) == label_record(grid[i], timings).label);
  }
}

TEST_CASE("evaluate_network charges the gemm fallback for failed predictions") {
  const NetworkSpec network = tiny_network();
  const ClassifierModel model = constant_model(ConvMethod::Winograd);
  SyntheticTimingSource source;
  const NetworkReport report = evaluate_network(model, network, source);

  REQUIRE(report.layer_count == 4);
  REQUIRE(report.layers.size() == 4);
  CHECK(report.model_kind == "dt");
  CHECK(report.network_name == "tiny");

  // Layer 0 runs the predicted winograd; the other three fall back.
  CHECK(report.layers[0].predicted == ConvMethod::Winograd);
  CHECK(report.layers[0].effective == ConvMethod::Winograd);
  CHECK_FALSE(report.layers[0].predicted_failed);
  CHECK(report.layers[0].oracle == ConvMethod::Winograd);
  for (int i = 1; i < 4; ++i) {
    CAPTURE(i);
    CHECK(report.layers[i].predicted == ConvMethod::Winograd);
    CHECK(report.layers[i].effective == ConvMethod::Gemm);
    CHECK(report.layers[i].predicted_failed);
  }
  CHECK(report.layers[1].oracle == ConvMethod::Direct);
  CHECK(report.layers[2].oracle == ConvMethod::Gemm);
  CHECK(report.layers[3].oracle == ConvMethod::Direct);

  // Effective selections: winograd once, gemm three times.
  CHECK(report.model_selection == std::array<int, 3>{3, 0, 1});
  CHECK(report.oracle_selection == std::array<int, 3>{1, 2, 1});
  // Layers 0 and 2 end up on the oracle method.
  CHECK(report.accuracy == 0.5);

  double expected_predicted = 0.0;
  double expected_oracle = 0.0;
  for (const LayerShape& shape : network.layers) {
    const MethodTimings t = synthetic_costs(shape);
    expected_oracle += t[method_code(fastest_ok(t))].micros;
  }
  expected_predicted += synthetic_costs(network.layers[0])[2].micros;
  expected_predicted += synthetic_costs(network.layers[1])[0].micros;
  expected_predicted += synthetic_costs(network.layers[2])[0].micros;
  expected_predicted += synthetic_costs(network.layers[3])[0].micros;
  CHECK(report.total_predicted == expected_predicted);
  CHECK(report.total_oracle == expected_oracle);
  CHECK(report.total_oracle <= report.total_predicted);

  // Winograd only completes the single K = 3 layer.
  CHECK(report.static_totals[0].layers_completed == 4);
  CHECK(report.static_totals[1].layers_completed == 4);
  CHECK(report.static_totals[2].layers_completed == 1);
}

TEST_CASE("evaluate_network_oracle is exact by construction") {
  const NetworkSpec network = tiny_network();
  SyntheticTimingSource source;
  const NetworkReport report = evaluate_network_oracle(network, source);
  CHECK(report.accuracy == 1.0);
  CHECK(report.total_predicted == report.total_oracle);
  CHECK(report.model_kind == "oracle");
  CHECK(report.model_selection == report.oracle_selection);
}

TEST_CASE("ranking timing source replays stored rows and rejects unknown shapes") {
  const fs::path path = scratch_dir() / "source.csv";
  std::ofstream(path, std::ios::binary)
      << "W,H,C_IN,KERNEL_SIZE,C_OUT,gemm_us,gemm_status,direct_us,direct_status,"
         "winograd_us,winograd_status\n"
         "8,8,4,3,4,100.5,ok,50.25,ok,,failed\n";
  RankingFileTimingSource source(path.string());
  const MethodTimings t = source.timings(LayerShape(8, 8, 4, 3, 4));
  CHECK(t[0].micros == 100.5);
  CHECK(t[1].micros == 50.25);
  CHECK(t[2].status == RunStatus::Failed);
  CHECK_THROWS_AS(source.timings(LayerShape(9, 9, 4, 3, 4)), MissingShape);

  NetworkSpec network{"n", {LayerShape(9, 9, 4, 3, 4)}};
  const ClassifierModel model = constant_model(ConvMethod::Gemm);
  CHECK_THROWS_AS(evaluate_network(model, network, source), MissingShape);
}

TEST_CASE("dispatch_convolve runs the predicted backend") {
  const LayerShape shape(6, 6, 2, 3, 3);
  const Tensor input = random_tensor({2, 6, 6}, 11);
  const Tensor kernels = random_tensor({3, 2, 3, 3}, 12);
  const ClassifierModel model = constant_model(ConvMethod::Direct);
  DispatchLog log;
  const Tensor out = dispatch_convolve(model, input, kernels, shape, &log);
  CHECK(first_mismatch(out, direct_conv(input, kernels, shape)) == -1);
  REQUIRE(log.entries.size() == 1);
  CHECK(log.entries[0].predicted == ConvMethod::Direct);
  CHECK(log.entries[0].executed == ConvMethod::Direct);
  CHECK_FALSE(log.entries[0].fell_back);
}

TEST_CASE("dispatch_convolve falls back to gemm when the prediction cannot run") {
  const LayerShape shape(8, 8, 2, 5, 3);  // K = 5: winograd refuses
  const Tensor input = random_tensor({2, 8, 8}, 21);
  const Tensor kernels = random_tensor({3, 2, 5, 5}, 22);
  const ClassifierModel model = constant_model(ConvMethod::Winograd);
  DispatchLog log;
  const Tensor out = dispatch_convolve(model, input, kernels, shape, &log);
  CHECK(first_mismatch(out, im2col_gemm_conv(input, kernels, shape)) == -1);
  REQUIRE(log.entries.size() == 1);
  CHECK(log.entries[0].predicted == ConvMethod::Winograd);
  CHECK(log.entries[0].executed == ConvMethod::Gemm);
  CHECK(log.entries[0].fell_back);
}

TEST_CASE("emit_report writes the five-row plot and the summary") {
  const NetworkSpec network = tiny_network();
  const ClassifierModel model = constant_model(ConvMethod::Winograd);
  SyntheticTimingSource source;
  const NetworkReport report = evaluate_network(model, network, source);

  const fs::path dir = scratch_dir() / "report";
  emit_report(report, dir.string());

  const std::vector<std::string> plot = split_lines(read_text(dir / "plot.csv"));
  REQUIRE(plot.size() == 6);
  CHECK(plot[0] == "column,total_us,layers_completed,sel_gemm,sel_direct,sel_winograd");
  CHECK(plot[1].rfind("gemm,", 0) == 0);
  CHECK(plot[2].rfind("direct,", 0) == 0);
  CHECK(plot[3].rfind("winograd,", 0) == 0);
  CHECK(plot[4].rfind("model,", 0) == 0);
  CHECK(plot[5].rfind("oracle,", 0) == 0);
  // Static rows assign every layer to their own method.
  CHECK(plot[1].find(",4,4,0,0") != std::string::npos);
  CHECK(plot[2].find(",4,0,4,0") != std::string::npos);
  CHECK(plot[3].find(",1,0,0,4") != std::string::npos);
  // The model row carries the effective selection triple.
  CHECK(plot[4].find(",4,3,0,1") != std::string::npos);
  CHECK(plot[5].find(",4,1,2,1") != std::string::npos);

  const std::string summary = read_text(dir / "summary.txt");
  CHECK(summary.find("network: tiny\n") != std::string::npos);
  CHECK(summary.find("model: dt\n") != std::string::npos);
  CHECK(summary.find("layers: 4\n") != std::string::npos);
  CHECK(summary.find("accuracy_pct: 50.00\n") != std::string::npos);
  CHECK(summary.find("speedup_vs_gemm: ") != std::string::npos);
  CHECK(summary.find("speedup_vs_direct: ") != std::string::npos);
  // Winograd cannot finish the network, so it gets the failure marker
  // instead of a speedup.
  CHECK(summary.find("winograd: failed\n") != std::string::npos);
  CHECK(summary.find("speedup_vs_winograd") == std::string::npos);

  // A second emission of the same report is byte-identical.
  const fs::path dir2 = scratch_dir() / "report2";
  emit_report(report, dir2.string());
  CHECK(read_text(dir / "plot.csv") == read_text(dir2 / "plot.csv"));
  CHECK(read_text(dir / "summary.txt") == read_text(dir2 / "summary.txt"));
}

TEST_CASE("oracle reports show speedup 1.00X against themselves") {
  const NetworkSpec network = tiny_network();
  SyntheticTimingSource source;
  const NetworkReport report = evaluate_network_oracle(network, source);
  const fs::path dir = scratch_dir() / "oracle_report";
  emit_report(report, dir.string());
  const std::string summary = read_text(dir / "summary.txt");
  CHECK(summary.find("model: oracle\n") != std::string::npos);
  CHECK(summary.find("accuracy_pct: 100.00\n") != std::string::npos);
}

TEST_CASE("network csv reader handles comments, headers, and bad rows") {
  const fs::path good = scratch_dir() / "net_good.csv";
  std::ofstream(good, std::ios::binary) << "# three layers\n"
                                           "W,H,C_IN,KERNEL_SIZE,C_OUT\n"
                                           "224,224,3,3,32\n"
                                           "# a mid-file comment\n"
                                           "56,56,64,1,128\n"
                                           "7,7,512,3,512\n";
  const NetworkSpec spec = read_network_csv(good.string());
  CHECK(spec.name == "net_good");
  REQUIRE(spec.layers.size() == 3);
  CHECK(spec.layers[0] == LayerShape(224, 224, 3, 3, 32));
  CHECK(spec.layers[2] == LayerShape(7, 7, 512, 3, 512));

  const fs::path no_header = scratch_dir() / "net_no_header.csv";
  std::ofstream(no_header, std::ios::binary) << "224,224,3,3,32\n";
  CHECK_THROWS_AS(read_network_csv(no_header.string()), ParseError);

  const fs::path empty = scratch_dir() / "net_empty.csv";
  std::ofstream(empty, std::ios::binary) << "W,H,C_IN,KERNEL_SIZE,C_OUT\n";
  CHECK_THROWS_AS(read_network_csv(empty.string()), EmptyDataset);

  const fs::path short_row = scratch_dir() / "net_short.csv";
  std::ofstream(short_row, std::ios::binary) << "W,H,C_IN,KERNEL_SIZE,C_OUT\n224,224,3\n";
  CHECK_THROWS_AS(read_network_csv(short_row.string()), ParseError);

  CHECK_THROWS_AS(read_network_csv((scratch_dir() / "net_absent.csv").string()), IoError);
}

TEST_CASE("bundled network files load and keep their layer counts") {
  const fs::path data = fs::path(CONVSEL_DATA_DIR);
  const NetworkSpec mobilenets = read_network_csv((data / "mobilenets.csv").string());
  CHECK(mobilenets.name == "mobilenets");
  CHECK(mobilenets.layers.size() == 15);
  const NetworkSpec inception = read_network_csv((data / "inceptionv3.csv").string());
  CHECK(inception.name == "inceptionv3");
  CHECK(inception.layers.size() == 66);
  int k3 = 0;
  for (const LayerShape& layer : inception.layers) {
    if (layer.kernel_size() == 3) ++k3;
  }
  CHECK(k3 == 16);
}
