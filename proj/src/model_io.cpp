#include "rnn/model_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "rnn/errors.hpp"

namespace rnn {

namespace {

constexpr char kMagic[4] = {'M', 'L', 'R', 'N'};
constexpr std::uint32_t kVersion = 1;

std::uint64_t fnv1a(const std::vector<unsigned char>& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

struct Writer {
  std::vector<unsigned char> bytes;

  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void f64(double v) {
    std::uint64_t raw;
    std::memcpy(&raw, &v, 8);
    u64(raw);
  }
  void matrix(const Matrix& m) {
    u32(static_cast<std::uint32_t>(m.rows()));
    u32(static_cast<std::uint32_t>(m.cols()));
    for (double v : m) f64(v);
  }
  void vec(const std::vector<double>& v) {
    Matrix m(1, v.size());
    for (std::size_t i = 0; i < v.size(); ++i) m(0, i) = v[i];
    matrix(m);
  }
};

struct Reader {
  const std::vector<unsigned char>& bytes;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > bytes.size()) throw ParseError("model file: truncated payload");
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(bytes[pos + i]) << (8 * i);
    pos += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(bytes[pos + i]) << (8 * i);
    pos += 8;
    return v;
  }
  double f64() {
    const std::uint64_t raw = u64();
    double v;
    std::memcpy(&v, &raw, 8);
    return v;
  }
  Matrix matrix() {
    const std::uint32_t r = u32(), c = u32();
    if (std::uint64_t(r) * c > (1ull << 28))
      throw ParseError("model file: implausible matrix dimensions");
    Matrix m(r, c);
    for (double& v : m) v = f64();
    return m;
  }
  std::vector<double> vec() {
    const Matrix m = matrix();
    if (m.rows() > 1) throw ParseError("model file: expected a row vector");
    return std::vector<double>(m.begin(), m.end());
  }
};

}  // namespace

void save_model(const SavedModel& saved, const std::string& path) {
  const MlrnnModel& model = saved.model;
  Writer w;

  // Layer-size block.
  w.u32(static_cast<std::uint32_t>(model.channels.size()));
  for (const ChannelEncoder& enc : model.channels) {
    w.u32(static_cast<std::uint32_t>(enc.input_width));
    w.u32(static_cast<std::uint32_t>(enc.w_minus.size()));
    for (const Matrix& m : enc.w_minus) w.u32(static_cast<std::uint32_t>(m.cols()));
  }
  w.u32(static_cast<std::uint32_t>(model.doubled_width()));
  w.u32(static_cast<std::uint32_t>(model.output_width()));

  for (const ChannelEncoder& enc : model.channels) {
    for (const Matrix& m : enc.w_minus) w.matrix(m);
    w.vec(enc.rate);
  }
  w.matrix(model.w_plus_last);
  w.matrix(model.w_minus_last);
  w.matrix(model.w_plus_readout);
  w.f64(model.alpha);
  w.vec(model.output_lambda);
  w.f64(model.offset);

  w.u32(saved.norm_mode == Normalization::minmax ? 1u : 0u);
  if (saved.norm_mode == Normalization::minmax) {
    w.vec(saved.norm.min);
    w.vec(saved.norm.max);
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("model file: cannot write " + path);
  out.write(kMagic, 4);
  Writer header;
  header.u32(kVersion);
  out.write(reinterpret_cast<const char*>(header.bytes.data()),
            static_cast<std::streamsize>(header.bytes.size()));
  out.write(reinterpret_cast<const char*>(w.bytes.data()),
            static_cast<std::streamsize>(w.bytes.size()));
  Writer tail;
  tail.u64(fnv1a(w.bytes));
  out.write(reinterpret_cast<const char*>(tail.bytes.data()), 8);
  if (!out) throw DataError("model file: write failed for " + path);
}

SavedModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("model file: cannot open " + path);
  std::vector<unsigned char> all((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  if (all.size() < 16) throw ParseError("model file: too short");
  if (std::memcmp(all.data(), kMagic, 4) != 0) throw ParseError("model file: bad magic");

  std::uint32_t version = 0;
  for (int i = 0; i < 4; ++i) version |= std::uint32_t(all[4 + i]) << (8 * i);
  if (version != kVersion)
    throw ParseError("model file: unsupported version " + std::to_string(version));

  std::vector<unsigned char> payload(all.begin() + 8, all.end() - 8);
  std::uint64_t stored = 0;
  for (int i = 0; i < 8; ++i) stored |= std::uint64_t(all[all.size() - 8 + i]) << (8 * i);
  if (fnv1a(payload) != stored) throw ParseError("model file: checksum mismatch");

  Reader r{payload};
  SavedModel saved;
  MlrnnModel& model = saved.model;

  const std::uint32_t n_channels = r.u32();
  if (n_channels == 0 || n_channels > 4096) throw ParseError("model file: bad channel count");
  std::vector<std::uint32_t> layer_counts(n_channels);
  for (std::uint32_t c = 0; c < n_channels; ++c) {
    ChannelEncoder enc;
    enc.input_width = r.u32();
    layer_counts[c] = r.u32();
    for (std::uint32_t l = 0; l < layer_counts[c]; ++l) r.u32();  // widths; implied by matrices
    model.channels.push_back(std::move(enc));
  }
  r.u32();  // doubled width, implied by w_plus_last
  r.u32();  // output width, implied by w_plus_readout

  for (std::uint32_t c = 0; c < n_channels; ++c) {
    for (std::uint32_t l = 0; l < layer_counts[c]; ++l)
      model.channels[c].w_minus.push_back(r.matrix());
    model.channels[c].rate = r.vec();
    if (model.channels[c].rate.size() != layer_counts[c])
      throw ParseError("model file: rate vector length mismatch");
  }
  model.w_plus_last = r.matrix();
  model.w_minus_last = r.matrix();
  model.w_plus_readout = r.matrix();
  model.alpha = r.f64();
  model.output_lambda = r.vec();
  model.offset = r.f64();

  saved.norm_mode = r.u32() ? Normalization::minmax : Normalization::none;
  if (saved.norm_mode == Normalization::minmax) {
    saved.norm.min = r.vec();
    saved.norm.max = r.vec();
  }
  if (r.pos != payload.size()) throw ParseError("model file: trailing bytes in payload");

  const ValidationReport audit = audit_model(model);
  if (!audit.passed())
    throw DataError("model file: constraint audit failed:\n" + audit.to_string());
  return saved;
}

}  // namespace rnn
