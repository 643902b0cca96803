#include "convsel/learn/metrics.hpp"

#include "convsel/errors.hpp"

namespace convsel {

TrainReport evaluate_accuracy(const ClassifierModel& model,
                              const std::vector<LabeledSample>& samples) {
  if (samples.empty()) {
    throw EmptyDataset("cannot evaluate accuracy on an empty dataset");
  }
  TrainReport report;
  report.total = samples.size();
  std::uint64_t correct = 0;
  for (const LabeledSample& s : samples) {
    const ConvMethod predicted = predict(model, s.features);
    ++report.confusion[method_code(s.label)][method_code(predicted)];
    correct += predicted == s.label ? 1 : 0;
  }
  report.training_accuracy = static_cast<double>(correct) / static_cast<double>(report.total);

  for (int c = 0; c < kMethodCount; ++c) {
    std::uint64_t predicted_c = 0;
    std::uint64_t actual_c = 0;
    for (int other = 0; other < kMethodCount; ++other) {
      predicted_c += report.confusion[other][c];
      actual_c += report.confusion[c][other];
    }
    report.precision[c] =
        predicted_c ? static_cast<double>(report.confusion[c][c]) / predicted_c : 0.0;
    report.recall[c] = actual_c ? static_cast<double>(report.confusion[c][c]) / actual_c : 0.0;
  }
  return report;
}

}  // namespace convsel
