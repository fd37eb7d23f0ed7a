#include "rnn/pgm.hpp"

#include <cmath>
#include <fstream>
#include <vector>

#include "rnn/errors.hpp"

namespace rnn {

namespace {

// Next whitespace-delimited token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {}
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok += static_cast<char>(c);
  }
  return tok;
}

unsigned long parse_header_number(std::istream& in, const char* what) {
  const std::string tok = next_token(in);
  if (tok.empty()) throw ParseError(std::string("pgm: missing ") + what);
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    throw ParseError(std::string("pgm: bad ") + what + " '" + tok + "'");
  }
}

}  // namespace

Image read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("pgm: cannot open " + path);
  const std::string magic = next_token(in);
  if (magic != "P5") throw ParseError("pgm: expected binary P5 magic in " + path);
  const unsigned long width = parse_header_number(in, "width");
  const unsigned long height = parse_header_number(in, "height");
  const unsigned long maxval = parse_header_number(in, "maxval");
  if (width == 0 || height == 0) throw ParseError("pgm: zero dimensions in " + path);
  if (maxval == 0 || maxval > 255) throw ParseError("pgm: only 8-bit maxval supported");
  // The header ends with exactly one whitespace byte, already consumed by
  // the tokenizer.

  std::vector<unsigned char> buf(width * height);
  if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size())))
    throw ParseError("pgm: truncated pixel data in " + path);

  Matrix m(height, width);
  for (std::size_t i = 0; i < buf.size(); ++i)
    m.data()[i] = static_cast<double>(buf[i]) / static_cast<double>(maxval);
  return Image(std::move(m));
}

PgmRescale write_pgm(const Matrix& m, const std::string& path) {
  if (m.empty()) throw std::invalid_argument("write_pgm: empty matrix");
  PgmRescale scale{min_value(m), max_value(m)};
  const double span = scale.hi - scale.lo;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("pgm: cannot write " + path);
  out << "P5\n" << m.cols() << ' ' << m.rows() << "\n255\n";
  std::vector<unsigned char> buf(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double v = span > 0.0 ? (m.data()[i] - scale.lo) / span : 0.0;
    buf[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!out) throw DataError("pgm: write failed for " + path);
  return scale;
}

}  // namespace rnn
