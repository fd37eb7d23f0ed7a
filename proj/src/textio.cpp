#include "rnn/textio.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "rnn/errors.hpp"

namespace rnn {

namespace {

std::string strip(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool skippable(const std::string& line) {
  const std::string t = strip(line);
  return t.empty() || t[0] == '#';
}

std::vector<double> parse_numbers(const std::string& text, std::size_t line_no) {
  std::vector<double> out;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("bad number '" + tok + "'", line_no);
    }
  }
  return out;
}

}  // namespace

RnnNetwork parse_network_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("network file: cannot open " + path);

  RnnNetwork net;
  bool have_l = false;
  std::string line;
  std::size_t line_no = 0;

  auto next_matrix_row = [&](std::size_t want, const std::string& key) {
    while (std::getline(in, line)) {
      ++line_no;
      if (skippable(line)) continue;
      std::vector<double> row = parse_numbers(line, line_no);
      if (row.size() != want)
        throw ParseError("matrix " + key + ": expected " + std::to_string(want) + " values",
                         line_no);
      return row;
    }
    throw ParseError("matrix " + key + ": missing rows", line_no);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));

    if (key == "L") {
      const std::vector<double> v = parse_numbers(value, line_no);
      if (v.size() != 1 || v[0] < 1 || v[0] != static_cast<std::size_t>(v[0]))
        throw ParseError("L must be a positive integer", line_no);
      net = RnnNetwork::empty(static_cast<std::size_t>(v[0]));
      have_l = true;
      continue;
    }
    if (!have_l) throw ParseError("'L = ...' must come before '" + key + "'", line_no);

    if (key == "r" || key == "Lambda_plus" || key == "lambda_minus") {
      std::vector<double> v = parse_numbers(value, line_no);
      if (v.size() != net.neuron_count)
        throw ParseError(key + ": expected " + std::to_string(net.neuron_count) + " values",
                         line_no);
      if (key == "r") net.firing_rate = std::move(v);
      else if (key == "Lambda_plus") net.ext_excitatory = std::move(v);
      else net.ext_inhibitory = std::move(v);
    } else if (key == "W_plus" || key == "W_minus") {
      if (!value.empty()) throw ParseError(key + ": matrix rows start on the next line", line_no);
      Matrix m(net.neuron_count, net.neuron_count);
      for (std::size_t i = 0; i < net.neuron_count; ++i) {
        const std::vector<double> row = next_matrix_row(net.neuron_count, key);
        for (std::size_t j = 0; j < net.neuron_count; ++j) m(i, j) = row[j];
      }
      if (key == "W_plus") net.w_plus = std::move(m);
      else net.w_minus = std::move(m);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  if (!have_l) throw ParseError("network file: missing 'L = ...' in " + path);
  return net;
}

void write_network_file(const RnnNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("network file: cannot write " + path);
  out << std::setprecision(17);
  out << "L = " << net.neuron_count << '\n';
  auto vec = [&](const char* key, const std::vector<double>& v) {
    out << key << " =";
    for (double x : v) out << ' ' << x;
    out << '\n';
  };
  vec("r", net.firing_rate);
  vec("Lambda_plus", net.ext_excitatory);
  vec("lambda_minus", net.ext_inhibitory);
  auto mat = [&](const char* key, const Matrix& m) {
    out << key << " =\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
      out << '\n';
    }
  };
  mat("W_plus", net.w_plus);
  mat("W_minus", net.w_minus);
  if (!out) throw DataError("network file: write failed for " + path);
}

Matrix read_matrix_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("matrix file: cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::vector<double> row = parse_numbers(line, line_no);
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError("matrix file: ragged row", line_no);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("matrix file: no rows in " + path);
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

TrainFileConfig parse_train_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("config file: cannot open " + path);
  TrainFileConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    for (char& c : value)
      if (c == ',') c = ' ';
    const std::vector<double> nums = parse_numbers(value, line_no);

    auto one = [&]() {
      if (nums.size() != 1) throw ParseError(key + ": expected a single value", line_no);
      return nums[0];
    };
    if (key == "hidden_layers") {
      if (nums.empty()) throw ParseError("hidden_layers: expected at least one width", line_no);
      cfg.train.hidden_layer_sizes.clear();
      for (double v : nums) {
        if (v < 1 || v != static_cast<std::size_t>(v))
          throw ParseError("hidden_layers: widths must be positive integers", line_no);
        cfg.train.hidden_layer_sizes.push_back(static_cast<std::size_t>(v));
      }
    } else if (key == "fista_iterations") {
      cfg.train.fista.max_iter = static_cast<std::size_t>(one());
    } else if (key == "l1_weight") {
      cfg.train.l1_weight = one();
    } else if (key == "seed") {
      cfg.train.seed = static_cast<std::uint64_t>(one());
    } else if (key == "rate_divisor") {
      cfg.train.rate_divisor = one();
    } else if (key == "slann_weight_scale") {
      cfg.train.slann_weight_scale = one();
    } else if (key == "holdout_fraction") {
      cfg.holdout_fraction = one();
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  return cfg;
}

}  // namespace rnn
