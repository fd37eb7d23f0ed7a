#pragma once

#include <string>

#include "rnn/dataset.hpp"
#include "rnn/mlrnn.hpp"

namespace rnn {

/// A trained model plus the feature normalization it was trained with, so
/// prediction on raw files reproduces training-time inputs exactly.
struct SavedModel {
  MlrnnModel model;
  Normalization norm_mode = Normalization::none;
  NormStats norm;  // used when norm_mode == minmax
};

/// Binary "MLRN" container, format version 1: magic, version, layer-size
/// block, every matrix as little-endian 64-bit floats preceded by its
/// dimensions, and a trailing 64-bit FNV-1a checksum of the payload.
/// save/load round-trips are bit-exact.
void save_model(const SavedModel& saved, const std::string& path);

/// Verifies magic, version and checksum, then audits the RNN constraints
/// before returning. Any failure names the offending check.
SavedModel load_model(const std::string& path);

}  // namespace rnn
