#include "rnn/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "rnn/errors.hpp"
#include "rnn/rng.hpp"

namespace rnn {

NormStats compute_minmax(const Matrix& x) {
  NormStats s;
  s.min.assign(x.cols(), 0.0);
  s.max.assign(x.cols(), 0.0);
  for (std::size_t j = 0; j < x.cols(); ++j) {
    double lo = x(0, j), hi = x(0, j);
    for (std::size_t i = 1; i < x.rows(); ++i) {
      lo = std::min(lo, x(i, j));
      hi = std::max(hi, x(i, j));
    }
    s.min[j] = lo;
    s.max[j] = hi;
  }
  return s;
}

Matrix apply_minmax(const Matrix& x, const NormStats& stats) {
  if (stats.min.size() != x.cols() || stats.max.size() != x.cols())
    throw std::invalid_argument("apply_minmax: stats width mismatch");
  Matrix out(x.rows(), x.cols());
  for (std::size_t j = 0; j < x.cols(); ++j) {
    const double span = stats.max[j] - stats.min[j];
    for (std::size_t i = 0; i < x.rows(); ++i) {
      // Constant attributes map to 0; values outside the training range
      // clamp into [0,1] so downstream stays non-negative.
      const double v = span > 0.0 ? (x(i, j) - stats.min[j]) / span : 0.0;
      out(i, j) = std::clamp(v, 0.0, 1.0);
    }
  }
  return out;
}

namespace {

// --- CSV ------------------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') { cur += '"'; ++i; }
        else quoted = false;
      } else cur += ch;
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quote", line_no);
  fields.push_back(cur);
  return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("csv: non-numeric cell '" + s + "'", line_no);
  }
}

LabeledDataset load_csv(const DatasetSource& src) {
  std::ifstream in(src.path);
  if (!in) throw ParseError("csv: cannot open " + src.path);

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("csv: missing header row", 1);
  ++line_no;
  const std::vector<std::string> header = split_csv_line(line, line_no);

  std::size_t label_col = header.size();
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == src.label_column) { label_col = j; break; }
  if (label_col == header.size()) {
    // Allow a plain 0-based index as the column selector.
    try {
      std::size_t pos = 0;
      const unsigned long idx = std::stoul(src.label_column, &pos);
      if (pos == src.label_column.size() && idx < header.size()) label_col = idx;
    } catch (const std::exception&) {}
  }
  if (label_col == header.size())
    throw ParseError("csv: label column '" + src.label_column + "' not found in header", 1);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line, line_no);
    if (fields.size() != header.size())
      throw ParseError("csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(header.size()),
                       line_no);
    std::vector<double> row;
    row.reserve(header.size() - 1);
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (j == label_col) labels.push_back(fields[j]);
      else row.push_back(parse_number(fields[j], line_no));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("csv: no data rows in " + src.path);

  // Class order = first appearance.
  std::vector<std::string> class_names;
  std::vector<std::size_t> class_of(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto it = std::find(class_names.begin(), class_names.end(), labels[i]);
    if (it == class_names.end()) {
      class_of[i] = class_names.size();
      class_names.push_back(labels[i]);
    } else {
      class_of[i] = static_cast<std::size_t>(it - class_names.begin());
    }
  }

  LabeledDataset data;
  data.x = Matrix(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) data.x(i, j) = rows[i][j];
  data.y = Matrix(rows.size(), class_names.size());
  for (std::size_t i = 0; i < rows.size(); ++i) data.y(i, class_of[i]) = 1.0;
  data.class_names = std::move(class_names);
  return data;
}

// --- IDX ------------------------------------------------------------------

std::uint32_t read_be32(std::ifstream& in, const std::string& path) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw ParseError("idx: truncated header in " + path);
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
         std::uint32_t(b[3]);
}

LabeledDataset load_idx_pair(const DatasetSource& src) {
  std::ifstream images(src.path, std::ios::binary);
  if (!images) throw ParseError("idx: cannot open " + src.path);
  std::ifstream labels(src.labels_path, std::ios::binary);
  if (!labels) throw ParseError("idx: cannot open " + src.labels_path);

  if (read_be32(images, src.path) != 0x00000803u)
    throw ParseError("idx: bad image magic in " + src.path);
  const std::uint32_t count = read_be32(images, src.path);
  const std::uint32_t rows = read_be32(images, src.path);
  const std::uint32_t cols = read_be32(images, src.path);

  if (read_be32(labels, src.labels_path) != 0x00000801u)
    throw ParseError("idx: bad label magic in " + src.labels_path);
  const std::uint32_t label_count = read_be32(labels, src.labels_path);
  if (label_count != count)
    throw ParseError("idx: image/label count mismatch (" + std::to_string(count) + " vs " +
                     std::to_string(label_count) + ")");
  if (count == 0) throw ParseError("idx: empty dataset in " + src.path);

  const std::size_t dim = std::size_t(rows) * cols;
  std::vector<unsigned char> pixel_buf(dim);
  std::vector<unsigned char> label_buf(count);
  if (!labels.read(reinterpret_cast<char*>(label_buf.data()), count))
    throw ParseError("idx: truncated label payload in " + src.labels_path);

  LabeledDataset data;
  data.x = Matrix(count, dim);
  unsigned max_label = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!images.read(reinterpret_cast<char*>(pixel_buf.data()), static_cast<std::streamsize>(dim)))
      throw ParseError("idx: truncated image payload at image " + std::to_string(i));
    for (std::size_t j = 0; j < dim; ++j) data.x(i, j) = pixel_buf[j] / 255.0;
    max_label = std::max(max_label, unsigned(label_buf[i]));
  }
  data.y = Matrix(count, max_label + 1);
  for (std::uint32_t i = 0; i < count; ++i) data.y(i, label_buf[i]) = 1.0;
  data.class_names.resize(max_label + 1);
  for (unsigned c = 0; c <= max_label; ++c) data.class_names[c] = std::to_string(c);
  return data;
}

}  // namespace

LabeledDataset load_dataset(const DatasetSource& src) {
  LabeledDataset data =
      src.format == DatasetSource::Format::csv ? load_csv(src) : load_idx_pair(src);
  if (src.normalization == Normalization::minmax)
    data.x = apply_minmax(data.x, compute_minmax(data.x));
  if (!all_nonnegative(data.x))
    throw DataError("dataset: attributes are negative; use minmax normalization");
  return data;
}

void save_dataset_csv(const LabeledDataset& data, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("dataset: cannot write " + path);
  out.precision(17);
  for (std::size_t j = 0; j < data.x.cols(); ++j) out << 'a' << j << ',';
  out << "label\n";
  for (std::size_t i = 0; i < data.x.rows(); ++i) {
    for (std::size_t j = 0; j < data.x.cols(); ++j) out << data.x(i, j) << ',';
    std::size_t cls = 0;
    for (std::size_t j = 1; j < data.y.cols(); ++j)
      if (data.y(i, j) > data.y(i, cls)) cls = j;
    if (cls < data.class_names.size()) out << data.class_names[cls];
    else out << cls;
    out << '\n';
  }
  if (!out) throw DataError("dataset: write failed for " + path);
}

DatasetSplit split_dataset(const LabeledDataset& data, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0))
    throw std::invalid_argument("split_dataset: test_fraction must be in [0,1)");
  const std::size_t n = data.x.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  for (std::size_t i = n; i > 1; --i)  // Fisher-Yates on the engine's raw stream
    std::swap(order[i - 1], order[rng.below(i)]);

  const std::size_t test_n = static_cast<std::size_t>(test_fraction * static_cast<double>(n));
  auto take = [&](std::size_t begin, std::size_t count) {
    LabeledDataset part;
    part.x = Matrix(count, data.x.cols());
    part.y = Matrix(count, data.y.cols());
    part.class_names = data.class_names;
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t src_row = order[begin + i];
      for (std::size_t j = 0; j < data.x.cols(); ++j) part.x(i, j) = data.x(src_row, j);
      for (std::size_t j = 0; j < data.y.cols(); ++j) part.y(i, j) = data.y(src_row, j);
    }
    return part;
  };
  DatasetSplit split;
  split.test = take(0, test_n);
  split.train = take(test_n, n - test_n);
  return split;
}

}  // namespace rnn
