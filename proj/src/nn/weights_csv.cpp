#include "boundlab/nn/weights_csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace boundlab::nn {

std::string format_number(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

double parse_number(std::string_view token) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) token.remove_prefix(1);
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r'))
    token.remove_suffix(1);
  double value = 0.0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size())
    throw CsvNumberError("unparsable number '" + std::string(token) + "'");
  return value;
}

namespace {

void write_row(std::string& out, const double* values, int n, int stride) {
  for (int i = 0; i < n; ++i) {
    if (i) out += ',';
    out += format_number(values[i * stride]);
  }
  out += '\n';
}

std::vector<double> parse_row(const std::string& line, int expected, int line_no) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    const auto end = comma == std::string::npos ? line.size() : comma;
    try {
      values.push_back(parse_number(std::string_view(line).substr(start, end - start)));
    } catch (const CsvNumberError& e) {
      throw CsvNumberError("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(values.size()) != expected)
    throw CsvShapeError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(expected) + " values, got " +
                        std::to_string(values.size()));
  return values;
}

struct Header {
  std::string kind;
  int index = 0;
  int rows = 0;
  int cols = 0;
};

Header parse_header(const std::string& line, int line_no) {
  std::istringstream in(line);
  std::string hash;
  Header h;
  in >> hash >> h.kind;
  auto fail = [&]() -> Header {
    throw CsvHeaderError("line " + std::to_string(line_no) + ": malformed header '" + line + "'");
  };
  if (hash != "#") return fail();
  if (h.kind == "layer") {
    if (!(in >> h.index >> h.rows >> h.cols)) return fail();
  } else if (h.kind == "logstd") {
    if (!(in >> h.rows >> h.cols)) return fail();
  } else {
    return fail();
  }
  std::string extra;
  if (in >> extra || h.rows <= 0 || h.cols <= 0 || h.index < 0) return fail();
  return h;
}

}  // namespace

std::string weights_to_csv(const Mlp& net, const Eigen::VectorXd* log_std) {
  std::string out;
  for (int l = 0; l < net.num_layers(); ++l) {
    const auto w = net.weight(l);
    const auto b = net.bias(l);
    out += "# layer " + std::to_string(l) + " " + std::to_string(w.rows()) + " " +
           std::to_string(w.cols()) + "\n";
    std::vector<double> row(w.cols() + 1);
    for (int r = 0; r < w.rows(); ++r) {
      for (int c = 0; c < w.cols(); ++c) row[c] = w(r, c);
      row[w.cols()] = b(r);
      write_row(out, row.data(), static_cast<int>(row.size()), 1);
    }
  }
  if (log_std) {
    out += "# logstd 1 " + std::to_string(log_std->size()) + "\n";
    write_row(out, log_std->data(), static_cast<int>(log_std->size()), 1);
  }
  return out;
}

NetworkWeights weights_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  auto next_line = [&](std::string& l) {
    while (std::getline(in, l)) {
      ++line_no;
      if (!l.empty() && l.back() == '\r') l.pop_back();
      if (!l.empty()) return true;
    }
    return false;
  };

  struct Block {
    Eigen::MatrixXd weight;
    Eigen::VectorXd bias;
  };
  std::vector<Block> layers;
  std::optional<Eigen::VectorXd> log_std;

  while (next_line(line)) {
    if (line[0] != '#')
      throw CsvShapeError("line " + std::to_string(line_no) + ": data row outside any block");
    const Header h = parse_header(line, line_no);
    if (h.kind == "layer") {
      if (log_std) throw CsvHeaderError("line " + std::to_string(line_no) + ": layer after logstd");
      if (h.index != static_cast<int>(layers.size()))
        throw CsvHeaderError("line " + std::to_string(line_no) + ": expected layer " +
                             std::to_string(layers.size()));
      if (!layers.empty() && layers.back().weight.rows() != h.cols)
        throw CsvShapeError("line " + std::to_string(line_no) + ": layer input width " +
                            std::to_string(h.cols) + " does not match previous output " +
                            std::to_string(layers.back().weight.rows()));
      Block b{Eigen::MatrixXd(h.rows, h.cols), Eigen::VectorXd(h.rows)};
      for (int r = 0; r < h.rows; ++r) {
        if (!next_line(line) || line[0] == '#')
          throw CsvShapeError("layer " + std::to_string(h.index) + ": expected " +
                              std::to_string(h.rows) + " rows, got " + std::to_string(r));
        const auto values = parse_row(line, h.cols + 1, line_no);
        for (int c = 0; c < h.cols; ++c) b.weight(r, c) = values[c];
        b.bias(r) = values[h.cols];
      }
      layers.push_back(std::move(b));
    } else {
      if (log_std) throw CsvHeaderError("line " + std::to_string(line_no) + ": duplicate logstd");
      if (h.rows != 1) throw CsvShapeError("line " + std::to_string(line_no) + ": logstd must be one row");
      if (!next_line(line) || line[0] == '#')
        throw CsvShapeError("logstd: missing data row");
      const auto values = parse_row(line, h.cols, line_no);
      log_std = Eigen::Map<const Eigen::VectorXd>(values.data(), h.cols);
    }
  }
  if (layers.empty()) throw CsvHeaderError("no layers found");

  MlpSpec spec;
  spec.layer_sizes.push_back(static_cast<int>(layers.front().weight.cols()));
  for (const auto& b : layers) spec.layer_sizes.push_back(static_cast<int>(b.weight.rows()));
  NetworkWeights w{Mlp(spec), log_std};
  for (int l = 0; l < static_cast<int>(layers.size()); ++l) {
    w.net.weight(l) = layers[l].weight;
    w.net.bias(l) = layers[l].bias;
  }
  if (log_std && log_std->size() != spec.output_size())
    throw CsvShapeError("logstd width does not match the network output");
  return w;
}

void export_csv(const Mlp& net, const Eigen::VectorXd* log_std, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << weights_to_csv(net, log_std);
  if (!out) throw DataError("failed writing " + path.string());
}

NetworkWeights import_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return weights_from_csv(buf.str());
}

}  // namespace boundlab::nn
