#pragma once

#include <string>

#include "rnn/conv.hpp"
#include "rnn/matrix.hpp"

namespace rnn {

/// Reads a binary 8-bit PGM (magic P5); intensities come back scaled into
/// [0, 1] by the file's maxval.
Image read_pgm(const std::string& path);

/// Affine parameters used when quantizing a real-valued matrix to 8 bits:
/// byte = round((v - lo) / (hi - lo) * 255).
struct PgmRescale {
  double lo = 0.0;
  double hi = 1.0;
};

/// Writes m as binary P5 after rescaling its full value range to 0..255
/// (a flat matrix writes zeros). Returns the rescale actually applied.
PgmRescale write_pgm(const Matrix& m, const std::string& path);

}  // namespace rnn
