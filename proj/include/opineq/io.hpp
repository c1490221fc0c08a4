#ifndef OPINEQ_IO_HPP
#define OPINEQ_IO_HPP

// Matrix literals as JSON: {"dim": n, "re": [[...]], "im": [[...]]}, "im" optional.

#include <string>

#include <json.hpp>

#include "opineq/matcore.hpp"

namespace opineq {

using json = nlohmann::json;

json matrix_to_json(const ComplexMatrix& m);
json matrix_to_json(const HermitianMatrix& m);

/// Any square or rectangular complex matrix; "dim" may be omitted for rectangular input.
ComplexMatrix complex_matrix_from_json(const json& j);
HermitianMatrix hermitian_from_json(const json& j);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

ComplexMatrix read_matrix_file(const std::string& path);
HermitianMatrix read_hermitian_file(const std::string& path);

}  // namespace opineq

#endif  // OPINEQ_IO_HPP
