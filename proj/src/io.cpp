#include "opineq/io.hpp"

#include <fstream>
#include <stdexcept>

namespace opineq {
namespace {

json rows_of(const ComplexMatrix& m, bool imag) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd parse_rows(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty()) throw std::invalid_argument(std::string("matrix field '") + field + "' must be a non-empty array of rows");
  const auto n_rows = static_cast<Index>(rows.size());
  const auto n_cols = static_cast<Index>(rows.at(0).size());
  Eigen::MatrixXd out(n_rows, n_cols);
  for (Index i = 0; i < n_rows; ++i) {
    const json& row = rows.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Index>(row.size()) != n_cols)
      throw std::invalid_argument(std::string("matrix field '") + field + "' is ragged");
    for (Index j = 0; j < n_cols; ++j) out(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
  }
  return out;
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json j;
  if (m.rows() == m.cols()) j["dim"] = m.rows();
  j["re"] = rows_of(m, false);
  if (!m.imag().isZero(0.0)) j["im"] = rows_of(m, true);
  return j;
}

json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("re")) throw std::invalid_argument("matrix JSON needs a \"re\" field");
  const Eigen::MatrixXd re = parse_rows(j.at("re"), "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
  if (j.contains("im")) {
    im = parse_rows(j.at("im"), "im");
    if (im.rows() != re.rows() || im.cols() != re.cols()) throw std::invalid_argument("matrix \"im\" shape differs from \"re\"");
  }
  if (j.contains("dim")) {
    const auto dim = j.at("dim").get<Index>();
    if (dim != re.rows() || dim != re.cols()) throw std::invalid_argument("matrix \"dim\" does not match its entries");
  }
  ComplexMatrix m(re.rows(), re.cols());
  m.real() = re;
  m.imag() = im;
  return m;
}

HermitianMatrix hermitian_from_json(const json& j) {
  const ComplexMatrix m = complex_matrix_from_json(j);
  if (m.rows() != m.cols()) throw DimensionMismatch("Hermitian matrix JSON must be square");
  return HermitianMatrix(m);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

ComplexMatrix read_matrix_file(const std::string& path) { return complex_matrix_from_json(read_json_file(path)); }

HermitianMatrix read_hermitian_file(const std::string& path) { return hermitian_from_json(read_json_file(path)); }

}  // namespace opineq
