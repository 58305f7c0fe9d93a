#include "dring/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "dring/error.hpp"

namespace dring {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vector_to_json(m.row(i)));
  return json{{"field", m.field().key()}, {"rows", rows}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object() || !j.contains("field") || !j.contains("rows")) fail(ErrorCode::BadFormat, "matrix needs 'field' and 'rows'");
  if (!j["field"].is_string()) fail(ErrorCode::BadFormat, "'field' must be a string");
  const Field field = Field::parse(j["field"].get<std::string>());
  const json& rows = j["rows"];
  if (!rows.is_array() || rows.empty()) fail(ErrorCode::BadFormat, "'rows' must be a nonempty array");
  std::vector<std::vector<FieldElement>> conv;
  for (const auto& r : rows) conv.push_back(vector_from_json(field, r));
  return Matrix::from_rows(field, conv);
}

Matrix read_matrix_file(const std::string& path) { return matrix_from_json(read_json_file(path)); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadFormat, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::BadFormat, "malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::BadFormat, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

json vector_to_json(const Vector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

Vector vector_from_json(Field field, const json& j) {
  if (!j.is_array()) fail(ErrorCode::BadFormat, "expected an array of scalars");
  Vector v;
  for (const auto& s : j) {
    if (!s.is_string()) fail(ErrorCode::BadFormat, "scalars must be exact strings, got " + s.dump());
    v.push_back(field.parse_element(s.get<std::string>()));
  }
  return v;
}

json polynomial_to_json(const Polynomial& p) {
  return json{{"coefficients", vector_to_json(p.coefficients())}, {"text", p.to_string()}, {"degree", p.degree()}};
}

}  // namespace dring
