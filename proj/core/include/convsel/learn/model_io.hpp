#pragma once

#include <string>
#include <variant>

#include "convsel/learn/decision_tree.hpp"
#include "convsel/learn/naive_bayes.hpp"

namespace convsel {

using ClassifierModel = std::variant<DecisionTreeModel, NaiveBayesModel>;

inline constexpr std::string_view kModelMagic = "CONVSEL-MODEL v1";

ConvMethod predict(const ClassifierModel& model, const FeatureVector& features);

/// Model file format v1, line-oriented text:
///   CONVSEL-MODEL v1
///   kind: dt|nb
/// then for dt:
///   max_depth: N
///   min_samples_split: N
///   nodes: N
///   node I split FEATURE THRESHOLD LEFT RIGHT     (internal node)
///   node I leaf LABEL_CODE C_GEMM C_DIRECT C_WINOGRAD
/// and for nb:
///   variance_floor: X
///   prior CLASS_CODE X                            (three lines)
///   stat CLASS_CODE FEATURE_INDEX MEAN VARIANCE   (fifteen lines)
/// All reals use the shortest round-trip decimal form, so save followed by
/// load reproduces every field exactly.
void save_model(const ClassifierModel& model, const std::string& path);

/// Throws IoError when unreadable, FormatVersionMismatch when the first
/// line is not the magic header, ParseError on any malformed content.
ClassifierModel load_model(const std::string& path);

}  // namespace convsel
