#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <Eigen/Core>

#include "boundlab/errors.hpp"
#include "boundlab/nn/mlp.hpp"

namespace boundlab::nn {

// Weight CSV format, one block per layer:
//   # layer <index> <rows> <cols>
//   <rows> lines of <cols> weights followed by the bias, comma separated
// then optionally
//   # logstd 1 <n>
//   one line of <n> values
// Numbers use the shortest representation that round-trips exactly.

class CsvHeaderError : public DataError {
 public:
  using DataError::DataError;
};

class CsvShapeError : public DataError {
 public:
  using DataError::DataError;
};

class CsvNumberError : public DataError {
 public:
  using DataError::DataError;
};

struct NetworkWeights {
  Mlp net;
  std::optional<Eigen::VectorXd> log_std;
};

std::string format_number(double value);
// Throws CsvNumberError unless the whole token is a finite-or-not decimal.
double parse_number(std::string_view token);

std::string weights_to_csv(const Mlp& net, const Eigen::VectorXd* log_std = nullptr);
NetworkWeights weights_from_csv(const std::string& text);

void export_csv(const Mlp& net, const Eigen::VectorXd* log_std, const std::filesystem::path& path);
NetworkWeights import_csv(const std::filesystem::path& path);

}  // namespace boundlab::nn
