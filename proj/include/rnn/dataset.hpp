#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rnn/matrix.hpp"
#include "rnn/mlrnn.hpp"

namespace rnn {

enum class Normalization { none, minmax };

/// Where and how to read a labelled dataset.
struct DatasetSource {
  enum class Format { csv, idx_pair } format = Format::csv;
  std::string path;         // CSV file, or IDX image file
  std::string labels_path;  // IDX label file (idx_pair only)
  std::string label_column = "label";  // CSV: column name, or numeric index
  Normalization normalization = Normalization::minmax;
};

/// Per-attribute min/max of a training split; applying them maps each
/// attribute into [0, 1] (constant attributes to 0).
struct NormStats {
  std::vector<double> min;
  std::vector<double> max;
};

NormStats compute_minmax(const Matrix& x);
Matrix apply_minmax(const Matrix& x, const NormStats& stats);

/// Loads a labelled dataset.
///   csv:      RFC-4180-style with a required header row; the label column
///             is one-hot encoded, classes ordered by first appearance.
///   idx_pair: big-endian IDX image/label files (magics 0x803 / 0x801);
///             pixels are scaled by 1/255 and labels index the columns of Y.
/// With minmax normalization the statistics are taken over the rows being
/// loaded; callers that split afterwards should load raw and normalize the
/// splits with compute_minmax/apply_minmax instead.
LabeledDataset load_dataset(const DatasetSource& src);

/// Writes a labelled dataset as CSV (attributes a0..aN plus a trailing
/// label column) at full double precision, so load_dataset round-trips the
/// attribute values to within 1e-15.
void save_dataset_csv(const LabeledDataset& data, const std::string& path);

/// Deterministic shuffled split; test_fraction of rows (rounded down) go
/// to the second part.
struct DatasetSplit {
  LabeledDataset train;
  LabeledDataset test;
};
DatasetSplit split_dataset(const LabeledDataset& data, double test_fraction, std::uint64_t seed);

}  // namespace rnn
