#pragma once

#include <json.hpp>
#include <string>

#include "dring/matrix.hpp"
#include "dring/polynomial.hpp"

namespace dring {

using json = nlohmann::json;

/// {"field": "Q" | "Fp:<p>" | "NF:<c0,...,1>", "rows": [["p/q", ...], ...]}
json matrix_to_json(const Matrix& m);
/// Throws BadFormat on any structural problem; scalars must be strings.
Matrix matrix_from_json(const json& j);
Matrix read_matrix_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

json vector_to_json(const Vector& v);
Vector vector_from_json(Field field, const json& j);
json polynomial_to_json(const Polynomial& p);

}  // namespace dring
