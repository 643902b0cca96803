#pragma once

#include <string>
#include <vector>

#include "convsel/bench/timing.hpp"

namespace convsel {

/// The three files one sweep produces.
struct DatasetPaths {
  std::string features_csv;
  std::string arff;
  std::string ranking_csv;

  /// Conventional names inside a directory: features.csv, dataset.arff,
  /// ranking.csv.
  static DatasetPaths in_dir(const std::string& dir);
};

/// Writes the dataset in all three formats:
///   features CSV  header W,H,C_IN,KERNEL_SIZE,C_OUT,PRECISION,LABEL
///   ARFF          @relation convsel, same rows
///   ranking CSV   header W,H,C_IN,KERNEL_SIZE,C_OUT,gemm_us,gemm_status,
///                 direct_us,direct_status,winograd_us,winograd_status
/// Status tokens are ok/failed; failed rows leave the time field empty.
/// Byte-stable: identical records produce identical files. Throws
/// EmptyDataset when records is empty, IoError when a file cannot be
/// written.
void write_dataset(const std::vector<BenchmarkRecord>& records, const DatasetPaths& paths);

/// Inverse of write_dataset: reads ranking + features and reassembles the
/// records, recomputing each label from the ranking row and checking it
/// against the stored LABEL column. Throws IoError on unreadable files,
/// ParseError (with line number) on any malformed or inconsistent content,
/// EmptyDataset when there are no data rows.
std::vector<BenchmarkRecord> read_dataset(const DatasetPaths& paths);

/// Reads just the ranking CSV. Labels are recomputed from the timings.
std::vector<BenchmarkRecord> read_ranking_csv(const std::string& path);

/// One labeled shape as stored in the trainer-facing files.
struct FeatureRow {
  LayerShape shape;
  std::string precision;
  ConvMethod label;
};

std::vector<FeatureRow> read_features_csv(const std::string& path);
std::vector<FeatureRow> read_features_arff(const std::string& path);

/// Reads either trainer format, deciding by content: a first non-blank
/// line starting with '@' means ARFF, anything else is treated as the
/// features CSV.
std::vector<FeatureRow> read_features_auto(const std::string& path);

}  // namespace convsel
