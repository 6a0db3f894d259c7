#include "pptd/state_io.hpp"

#include <fstream>
#include <sstream>

#include "pptd/errors.hpp"

namespace pptd {

namespace {

using nlohmann::json;

nlohmann::json parse_with_position(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& err) {
    // Translate the byte offset into a line/column pair.
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t limit = std::min<std::size_t>(err.byte == 0 ? 0 : err.byte - 1, text.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InvalidArgument("malformed JSON at line " + std::to_string(line) + ", column " +
                          std::to_string(column) + ": " + err.what());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RMatrix read_real_matrix(const json& rows, const char* key, int expected) {
  if (!rows.is_array()) throw InvalidArgument(std::string("\"") + key + "\" must be an array of rows");
  const int n = static_cast<int>(rows.size());
  if (expected >= 0 && n != expected) {
    throw InvalidArgument(std::string("\"") + key + "\" has " + std::to_string(n) +
                          " rows, expected " + std::to_string(expected));
  }
  RMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw InvalidArgument(std::string("\"") + key + "\" row " + std::to_string(i) +
                            " must have " + std::to_string(n) + " entries");
    }
    for (int j = 0; j < n; ++j) {
      if (!row[j].is_number()) {
        throw InvalidArgument(std::string("\"") + key + "\" entry (" + std::to_string(i) + "," +
                              std::to_string(j) + ") is not a number");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

CMatrix read_complex_matrix(const json& doc, int expected) {
  if (!doc.contains("re")) throw InvalidArgument("missing \"re\" matrix");
  const RMatrix re = read_real_matrix(doc["re"], "re", expected);
  RMatrix im = RMatrix::Zero(re.rows(), re.cols());
  if (doc.contains("im")) im = read_real_matrix(doc["im"], "im", static_cast<int>(re.rows()));
  CMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

json matrix_rows(const RMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json operator_to_json(const HermitianOperator& op) {
  json doc;
  doc["dims"] = op.shape().dims();
  if (op.shape().subsystem_count() != 2 || op.shape().side_b() != std::vector<int>{1}) {
    doc["side_b"] = op.shape().side_b();
  }
  doc["re"] = matrix_rows(op.matrix().real());
  doc["im"] = matrix_rows(op.matrix().imag());
  return doc;
}

HermitianOperator operator_from_json(const json& doc) {
  if (!doc.is_object()) throw InvalidArgument("state JSON must be an object");
  if (!doc.contains("dims") || !doc["dims"].is_array()) {
    throw InvalidArgument("state JSON needs a \"dims\" array");
  }
  std::vector<int> dims;
  for (const auto& d : doc["dims"]) {
    if (!d.is_number_integer()) throw InvalidArgument("\"dims\" entries must be integers");
    dims.push_back(d.get<int>());
  }
  std::vector<int> side_b;
  if (doc.contains("side_b")) {
    side_b = doc["side_b"].get<std::vector<int>>();
  } else if (dims.size() == 2) {
    side_b = {1};
  } else if (dims.size() > 2) {
    throw InvalidArgument("\"side_b\" is required when \"dims\" has more than two entries");
  }
  TensorShape shape(std::move(dims), std::move(side_b));
  return HermitianOperator(shape, read_complex_matrix(doc, shape.total_dim()));
}

DensityMatrix parse_state(std::string_view text) {
  return DensityMatrix(operator_from_json(parse_with_position(text)));
}

HermitianOperator parse_operator(std::string_view text) {
  return operator_from_json(parse_with_position(text));
}

DensityMatrix read_state_file(const std::string& path) { return parse_state(slurp(path)); }

CorrelationMatrix parse_correlation_matrix(std::string_view text) {
  const json doc = parse_with_position(text);
  if (!doc.is_object()) throw InvalidArgument("correlation JSON must be an object");
  return CorrelationMatrix(read_complex_matrix(doc, -1));
}

CorrelationMatrix read_correlation_file(const std::string& path) {
  return parse_correlation_matrix(slurp(path));
}

std::string write_state(const HermitianOperator& op) { return operator_to_json(op).dump(); }

}  // namespace pptd
